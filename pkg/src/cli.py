"""
Command line front end.

    python -m src.cli torus check --spec torus.json --window 2
    python -m src.cli lietorus iso --spec model.json --shift "1,0;0,1" --kind diag
    python -m src.cli eala chi --spec model.json --shift "1"
    python -m src.cli scenario run spin-sigma-obstruction --json

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage or spec errors.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from .checks import (
    DEFAULT_MAX_CHECKS, DEFAULT_SEED, DEFAULT_WINDOW, build_report, check_isotope_composition, check_torus, jsonable,
)
from .coord_tori import JORDAN, TorusError, alternative_isotope, invariants, jordan_isotope
from .eala import EalaModel, check_eala, chi_iso, verify_chi
from .lattice import RootDomainError, parse_vec
from .lie_tori import (
    LieTorusError, check_axioms, diag_conjugation_iso, opposite_iso, shift_isotope, ssp_isotope_iso,
    tkk_isotope_iso, verify_graded_map,
)
from .quadform2 import QUADFORM_BOUND, QuadFormError, classify, is_isometric
from .scenarios import SCENARIOS, format_report_summary, list_scenarios, run_scenario, strip_timing
from .spec_loader import SpecLoadError, load_form, load_model, load_spec, load_torus, parse_shift

log = logging.getLogger(__name__)

USAGE_ERRORS = (SpecLoadError, TorusError, QuadFormError, LieTorusError, RootDomainError, KeyError)

ISO_KINDS: Dict[str, Callable] = {
    'diag': diag_conjugation_iso,
    'tkk': tkk_isotope_iso,
    'ssp': ssp_isotope_iso,
}


def canonical_json(value: Any) -> str:
    return json.dumps(jsonable(value), sort_keys=True, indent=2, ensure_ascii=False)


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=DEFAULT_SEED, help='sampling seed')
    common.add_argument('--window', type=int, default=None, help='box radius of the degree window')
    common.add_argument('--max-checks', type=int, default=DEFAULT_MAX_CHECKS,
                        help='tuples tested exhaustively before sampling')
    common.add_argument('--json', action='store_true', help='print the JSON report instead of a summary')
    common.add_argument('--out', type=Path, help='also write the JSON report to this file')
    common.add_argument('-v', '--verbose', action='count', default=0, help='-v for info, -vv for debug logs')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog='lietori',
        description='Exact window checks for coordinate tori, Lie tori, their isotopes and EALAs.',
    )
    groups = parser.add_subparsers(dest='group', required=True)

    torus = groups.add_parser('torus', help='coordinate tori').add_subparsers(dest='command', required=True)
    p = torus.add_parser('check', parents=[common], help='flavor, unit, inverse and support laws')
    p.add_argument('--spec', type=Path, required=True)
    p = torus.add_parser('invariants', parents=[common], help='Gamma, S/Gamma and Sigma(S/Gamma)')
    p.add_argument('--spec', type=Path, required=True)
    p = torus.add_parser('isotope', parents=[common], help='build an isotope and check it')
    p.add_argument('--spec', type=Path, required=True)
    p.add_argument('--u', action='append', required=True,
                   help='degree of u (Jordan) or twice for u1, u2 (alternative)')
    p.add_argument('--v', help='second isotope degree, to check (A^(u))^(v) = A^(U_u v)')
    p = torus.add_parser('mul', parents=[common], help='product of two basis elements')
    p.add_argument('--spec', type=Path, required=True)
    p.add_argument('--lam', required=True)
    p.add_argument('--mu', required=True)

    quadform = groups.add_parser('quadform', help='mod-2 quadratic forms').add_subparsers(dest='command', required=True)
    p = quadform.add_parser('classify', parents=[common], help='isometry classes of rank n')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--bound', type=int, default=QUADFORM_BOUND)
    p = quadform.add_parser('isometric', parents=[common], help='search for an isometry')
    p.add_argument('--form', type=Path, required=True)
    p.add_argument('--form2', type=Path, required=True)
    p.add_argument('--bound', type=int, default=QUADFORM_BOUND)
    p = quadform.add_parser('from-torus', parents=[common], help='the form of (q, e)')
    p.add_argument('--spec', type=Path, required=True)

    lietorus = groups.add_parser('lietorus', help='Lie torus models').add_subparsers(dest='command', required=True)
    p = lietorus.add_parser('build', parents=[common], help='describe a model and its window basis')
    p.add_argument('--spec', type=Path, required=True)
    p = lietorus.add_parser('check', parents=[common], help='Lie torus axioms on the window')
    p.add_argument('--spec', type=Path, required=True)
    p = lietorus.add_parser('isotope', parents=[common], help='shift isotope, then its axioms')
    p.add_argument('--spec', type=Path, required=True)
    p.add_argument('--shift', required=True)
    p = lietorus.add_parser('iso', parents=[common], help='verify an isotope isomorphism')
    p.add_argument('--spec', type=Path, required=True)
    p.add_argument('--shift', help='required for diag, tkk and ssp')
    p.add_argument('--kind', choices=sorted(ISO_KINDS) + ['opposite'], required=True)

    eala = groups.add_parser('eala', help='E(L, SCDer(L), 0)').add_subparsers(dest='command', required=True)
    p = eala.add_parser('build', parents=[common], help='window checks of E')
    p.add_argument('--spec', type=Path, required=True)
    p = eala.add_parser('chi', parents=[common], help='verify chi onto E(L^(s))')
    p.add_argument('--spec', type=Path, required=True)
    p.add_argument('--shift', required=True)

    scenario = groups.add_parser('scenario', help='built-in scenarios').add_subparsers(dest='command', required=True)
    scenario.add_parser('list', parents=[common], help='names and descriptions')
    p = scenario.add_parser('run', parents=[common], help='run one scenario, or all')
    p.add_argument('name', help="scenario name or 'all'")
    p.add_argument('--expect', action='append', default=[], metavar='KEY=JSON',
                   help='override an expected outcome')
    return parser


def _window(args: argparse.Namespace, default: int) -> int:
    return default if args.window is None else args.window


# -- handlers ---------------------------------------------------------------

def _torus(args: argparse.Namespace) -> Dict[str, Any]:
    A = load_torus(args.spec)
    window = _window(args, DEFAULT_WINDOW)
    if args.command == 'check':
        return check_torus(A, window, args.max_checks, args.seed)
    if args.command == 'invariants':
        return invariants(A, min(window, 1))
    if args.command == 'mul':
        product = A.basis(parse_vec(args.lam)) * A.basis(parse_vec(args.mu))
        return {'torus': A.describe(), 'lam': args.lam, 'mu': args.mu, 'product': product.to_json(),
                'text': str(product)}
    degrees = [parse_vec(u) for u in args.u]
    if A.flavor == JORDAN:
        if len(degrees) != 1:
            raise TorusError("Jordan isotopes take a single --u")
        if args.v:
            return build_report([check_isotope_composition(A, degrees[0], parse_vec(args.v), min(window, 1))])
        isotope = jordan_isotope(A, degrees[0])
    else:
        if len(degrees) != 2:
            raise TorusError("Alternative and associative isotopes take --u twice")
        isotope = alternative_isotope(A, degrees[0], degrees[1])
    report = check_torus(isotope, window, args.max_checks, args.seed)
    report['invariants'] = invariants(isotope, 1)
    return report


def _quadform(args: argparse.Namespace) -> Dict[str, Any]:
    if args.command == 'classify':
        classes = classify(args.n, args.bound)
        return {'n': args.n, 'class_count': len(classes), 'classes': classes}
    if args.command == 'from-torus':
        kappa = load_form(load_spec(args.spec))
        return {'form': kappa.to_json(), 'text': str(kappa)}
    kappa, kappa2 = load_form(load_spec(args.form)), load_form(load_spec(args.form2))
    tau = is_isometric(kappa, kappa2, args.bound)
    passed = tau is not None
    return build_report([{
        'check_type': 'isometry_search',
        'passed': passed,
        'tau': tau.tolist() if passed else None,
        'witnesses': [],
        'message': f"Isometry search {'found' if passed else 'found no'} tau with {kappa2} o tau = {kappa}",
    }])


def _lietorus(args: argparse.Namespace) -> Dict[str, Any]:
    model = load_model(args.spec)
    window = _window(args, 1)
    if args.command == 'build':
        basis = model.window_basis(window)
        return {'model': model.describe(), 'window': window, 'window_basis_size': len(basis)}
    if args.command == 'check':
        return check_axioms(model, window, args.max_checks, args.seed)
    if args.command == 'isotope':
        isotope = shift_isotope(model, parse_shift(args.shift, model))
        return check_axioms(isotope, window, args.max_checks, args.seed)
    if args.kind == 'opposite':
        phi = opposite_iso(model)
    else:
        if not args.shift:
            raise LieTorusError(f"--shift is required for --kind {args.kind}")
        phi = ISO_KINDS[args.kind](model, parse_shift(args.shift, model))
    return verify_graded_map(phi, window, args.max_checks, args.seed)


def _eala(args: argparse.Namespace) -> Dict[str, Any]:
    model = load_model(args.spec)
    window = _window(args, 1)
    if args.command == 'build':
        return check_eala(EalaModel(model), window, args.max_checks, args.seed)
    return verify_chi(chi_iso(model, parse_shift(args.shift, model)), window, args.max_checks, args.seed)


def _parse_expectations(pairs: List[str]) -> Dict[str, Any]:
    expected = {}
    for pair in pairs:
        key, sep, raw = pair.partition('=')
        if not sep:
            raise KeyError(f"Expected KEY=JSON, got {pair!r}")
        try:
            expected[key] = json.loads(raw)
        except json.JSONDecodeError:
            expected[key] = raw
    return expected


def _scenario(args: argparse.Namespace) -> Dict[str, Any]:
    if args.command == 'list':
        return {'scenarios': [{'name': name, 'description': SCENARIOS[name].description,
                               'window': SCENARIOS[name].window} for name in list_scenarios()]}
    expected = _parse_expectations(args.expect)
    if args.name != 'all':
        return run_scenario(args.name, args.window, args.seed, args.max_checks, expected)
    reports = [run_scenario(name, args.window, args.seed, args.max_checks) for name in list_scenarios()]
    checks = [{
        'check_type': report['scenario'],
        'passed': report['summary']['overall_passed'],
        'witnesses': [report['diff']] if report['diff'] else [],
        'message': f"Scenario {report['scenario']} {'passed' if report['summary']['overall_passed'] else 'failed'}",
    } for report in reports]
    return build_report(checks, [e for r in reports for e in r['errors']], scenario='all',
                        reports={r['scenario']: strip_timing(r) for r in reports})


HANDLERS = {'torus': _torus, 'quadform': _quadform, 'lietorus': _lietorus, 'eala': _eala, 'scenario': _scenario}


def _render(result: Dict[str, Any]) -> str:
    if 'summary' in result:
        return format_report_summary(result)
    return canonical_json(result)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    try:
        result = HANDLERS[args.group](args)
    except USAGE_ERRORS as e:
        log.debug("Usage error", exc_info=True)
        print(f"❌ {e}", file=sys.stderr)
        return 2

    payload = canonical_json(strip_timing(result))
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(payload + "\n", encoding='utf-8')
    print(payload if args.json else _render(result))

    if 'summary' in result:
        return 0 if result['summary']['overall_passed'] else 1
    return 0


if __name__ == '__main__':
    raise SystemExit(main())
