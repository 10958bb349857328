"""JSON spec loading for tori, involutions, Lie torus models and quadratic forms."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

from .coord_tori import (
    Involution, JordanPlusTorus, LaurentTorus, OctonionTorus, QuantumTorus, SpinFactorTorus, StructuredTorus,
    alternative_isotope, involution_isotope, jordan_isotope, opposite,
)
from .exact_scalars import DEFAULT_ORDER
from .lattice import ShiftHom, parse_vec, vec
from .lie_tori import LieTorusModel, SLModel, SSPModel, TKKModel, shift_isotope
from .quadform2 import QuadFormF2, from_torus_with_involution

log = logging.getLogger(__name__)

TORUS_KINDS = ('quantum', 'laurent', 'octonion', 'spin', 'jordan_plus', 'jordan_isotope',
               'alternative_isotope', 'opposite')
MODEL_KINDS = ('sl', 'ssp', 'tkk', 'untwisted')


class SpecLoadError(Exception):
    """Custom exception for spec loading failures."""
    pass


def load_spec(filepath: Union[str, Path]) -> Dict[str, Any]:
    """
    Safely load a JSON spec file.

    Args:
        filepath: Path to the JSON file

    Returns:
        The decoded JSON object

    Raises:
        SpecLoadError: If the file cannot be read or is not a JSON object
    """
    filepath = Path(filepath)
    if not filepath.exists():
        raise SpecLoadError(f"File not found: {filepath}")
    if filepath.suffix.lower() != '.json':
        raise SpecLoadError(f"File is not a JSON spec: {filepath}")
    try:
        data = json.loads(filepath.read_text(encoding='utf-8'))
    except json.JSONDecodeError as e:
        raise SpecLoadError(f"Failed to parse JSON spec: {filepath}. Error: {str(e)}")
    except UnicodeDecodeError as e:
        raise SpecLoadError(f"Encoding error in spec file: {filepath}. Error: {str(e)}")
    if not isinstance(data, dict) or not data:
        raise SpecLoadError(f"Spec file is empty or not a JSON object: {filepath}")
    log.debug("Loaded spec %s with keys %s", filepath, sorted(data))
    return data


def _degree(value: Any):
    if isinstance(value, str):
        return parse_vec(value)
    return vec(value)


def build_torus(data: Dict[str, Any]) -> StructuredTorus:
    """
    Build a coordinate torus from its JSON description.

    Examples:
        {"kind": "quantum", "n": 2, "m": 2, "q": [[1, -1], [-1, 1]]}
        {"kind": "octonion", "extra_laurent": 1}
        {"kind": "spin", "n": 3}
        {"kind": "jordan_plus", "n": 2, "q": [[1, -1], [-1, 1]]}
        {"kind": "jordan_isotope", "parent": {...}, "u": [-1, 0, 0]}

    Raises:
        SpecLoadError: If the description is malformed
    """
    try:
        kind = data['kind']
        m = int(data.get('m', DEFAULT_ORDER))
        if kind == 'quantum':
            q = data.get('q')
            n = int(data['n']) if 'n' in data else len(q)
            return QuantumTorus(n, q, m)
        if kind == 'laurent':
            return LaurentTorus(int(data['n']), m)
        if kind == 'octonion':
            return OctonionTorus(int(data.get('extra_laurent', 0)), m)
        if kind == 'spin':
            return SpinFactorTorus(int(data.get('n', 3)), data.get('vectors'), m)
        if kind == 'jordan_plus':
            q = data.get('q')
            n = int(data['n']) if 'n' in data else len(q)
            return JordanPlusTorus(QuantumTorus(n, q, m))
        if kind == 'jordan_isotope':
            return jordan_isotope(build_torus(data['parent']), _degree(data['u']))
        if kind == 'alternative_isotope':
            return alternative_isotope(build_torus(data['parent']), _degree(data['u1']), _degree(data['u2']))
        if kind == 'opposite':
            return opposite(build_torus(data['parent']))
    except SpecLoadError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise SpecLoadError(f"Invalid torus spec {data!r}: {str(e)}")
    raise SpecLoadError(f"Unknown torus kind {kind!r}; expected one of {', '.join(TORUS_KINDS)}")


def build_involution(torus: StructuredTorus, data: Dict[str, Any]) -> Involution:
    """
    Build iota(x_i) = e_i x_i, then apply the isotopes listed under "h".

    Raises:
        SpecLoadError: If the description is malformed
    """
    try:
        iota = Involution.from_signs(torus, [int(e) for e in data['e']])
        for h in data.get('h', []):
            iota = involution_isotope(iota, _degree(h))
        return iota
    except (KeyError, TypeError, ValueError) as e:
        raise SpecLoadError(f"Invalid involution spec {data!r}: {str(e)}")


def parse_shift(text: Any, model: LieTorusModel) -> ShiftHom:
    """A shift given as "1,0;0,1" or as a list of base-root images."""
    try:
        if isinstance(text, str):
            return ShiftHom.parse(text, model.datum)
        return ShiftHom(model.datum, tuple(_degree(v) for v in text))
    except (TypeError, ValueError) as e:
        raise SpecLoadError(f"Invalid shift {text!r}: {str(e)}")


def build_model(data: Dict[str, Any]) -> LieTorusModel:
    """
    Build a Lie torus model, applying the optional "shift" as an isotope.

    Examples:
        {"model": "sl", "r": 2, "coord": {"kind": "quantum", "n": 2, "q": [[1, -1], [-1, 1]]}}
        {"model": "ssp", "r": 4, "coord": {...}, "involution": {"e": [1, 1]}}
        {"model": "tkk", "coord": {"kind": "spin", "n": 3}}
        {"model": "untwisted", "r": 1, "n": 1}

    Raises:
        SpecLoadError: If the description is malformed
        InadmissibleShiftError: If the shift is not admissible
    """
    try:
        kind = data['model']
        if kind == 'untwisted':
            model = SLModel(LaurentTorus(int(data.get('n', 1)), int(data.get('m', DEFAULT_ORDER))), int(data.get('r', 1)))
        elif kind == 'sl':
            model = SLModel(build_torus(data['coord']), int(data['r']))
        elif kind == 'ssp':
            torus = build_torus(data['coord'])
            model = SSPModel(torus, int(data['r']), build_involution(torus, data['involution']))
        elif kind == 'tkk':
            options = {k: int(data[k]) for k in ('action_window', 'cartan_window') if k in data}
            model = TKKModel(build_torus(data['coord']), **options)
        else:
            raise SpecLoadError(f"Unknown model kind {kind!r}; expected one of {', '.join(MODEL_KINDS)}")
    except SpecLoadError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise SpecLoadError(f"Invalid model spec: {str(e)}")
    if 'shift' in data:
        model = shift_isotope(model, parse_shift(data['shift'], model))
    log.debug("Built %s model over %s", model.kind, model.torus.kind)
    return model


def load_form(data: Dict[str, Any]) -> QuadFormF2:
    """
    A mod-2 quadratic form, either {"n", "b", "a"} or {"q", "e"} read off a
    quantum torus with involution.

    Raises:
        SpecLoadError: If the description is malformed
    """
    try:
        if 'q' in data:
            return from_torus_with_involution(data['q'], data['e'])
        return QuadFormF2.from_json(data)
    except (KeyError, TypeError, ValueError) as e:
        raise SpecLoadError(f"Invalid quadratic form spec {data!r}: {str(e)}")


def load_torus(filepath: Union[str, Path]) -> StructuredTorus:
    data = load_spec(filepath)
    return build_torus(data.get('coord', data))


def load_model(filepath: Union[str, Path]) -> LieTorusModel:
    return build_model(load_spec(filepath))
