"""Streamlit frontend for the Lie torus scenario catalogue."""

import json

import streamlit as st

from src.checks import DEFAULT_MAX_CHECKS, DEFAULT_SEED, jsonable
from src.scenarios import (
    SCENARIOS, format_report_summary, get_failed_checks, list_scenarios, report_to_frame, run_scenario, step_frame,
    strip_timing,
)


def main():
    """Main Streamlit application."""
    st.set_page_config(
        page_title="Lie Torus Isotopy Checker",
        page_icon="🧮",
        layout="wide",
        initial_sidebar_state="expanded"
    )

    st.title("🧮 Lie Torus Isotopy Checker")
    st.markdown("**Exact window checks for coordinate tori, Lie tori, their isotopes and EALAs.** "
                "Pick a scenario, adjust the window and sampling options in the sidebar, and run it. "
                "Every identity is evaluated in exact arithmetic; failures come with serialized witnesses.")

    with st.sidebar:
        st.header("Configuration")
        name = st.selectbox("Scenario", list_scenarios(), help="Built-in scenario to run")
        scenario = SCENARIOS[name]
        st.caption(scenario.description)

        use_default = st.checkbox("Use the scenario's default window", value=True)
        window = None
        if not use_default:
            window = st.number_input("Window", min_value=1, max_value=3, value=scenario.window,
                                     help="Box radius w of the degree window [-w, w]^n")
        seed = st.number_input("Seed", min_value=0, value=DEFAULT_SEED, help="Seed for sampled sweeps")
        max_checks = st.number_input("Max checks", min_value=100, value=DEFAULT_MAX_CHECKS, step=1000,
                                     help="Tuples tested exhaustively before sampling kicks in")

        st.subheader("Expected outcomes")
        expected_json = st.text_area(
            "Override (JSON, optional)",
            value="",
            height=100,
            placeholder=json.dumps(jsonable(scenario.expected)),
            help="Replace some expected outcomes, e.g. to watch a corrupted expectation fail"
        )

    st.header("📋 Scenario")
    st.write(f"**{name}**: {scenario.description}")
    st.json(jsonable(scenario.expected))

    if not st.button("▶️ Run scenario"):
        st.info("👈 Choose a scenario in the sidebar and press Run")
        with st.expander("📖 About the catalogue"):
            st.markdown("\n".join(f"- **{n}**: {SCENARIOS[n].description}" for n in list_scenarios()))
        return

    expected = None
    if expected_json.strip():
        try:
            expected = json.loads(expected_json)
        except json.JSONDecodeError as e:
            st.error(f"Invalid expected outcomes JSON: {e}")
            return

    with st.spinner(f"Running {name}..."):
        report = run_scenario(name, window=int(window) if window else None, seed=int(seed),
                              max_checks=int(max_checks), expected=expected)
    display_results(report)


def display_results(report: dict):
    """Display a scenario report in the Streamlit interface."""
    st.header("📊 Summary Dashboard")

    summary = report.get('summary', {})
    if not report.get('checks'):
        st.error("❌ The scenario produced no results")
        for error in report.get('errors', []):
            st.error(f"Error: {error}")
        return

    col1, col2, col3, col4 = st.columns(4)
    with col1:
        st.metric("Window", report.get('window', '-'), help="Box radius of the degree window")
    with col2:
        st.metric("Steps", len(report.get('steps', {})), help="Check sequences run by the scenario")
    with col3:
        st.metric("Expectations Met", f"{summary.get('passed_checks', 0)}/{summary.get('total_checks', 0)}",
                  help="Observed outcomes that match the expected ones")
    with col4:
        st.metric("Duration", f"{report.get('duration_s', 0)}s", help="Wall-clock time")

    if summary.get('overall_passed', False):
        st.success("✅ All expected outcomes observed!")
    else:
        st.warning("⚠️ Some outcomes differ from the expected ones. See details below.")
        if report.get('diff'):
            st.json(report['diff'])

    for error in report.get('errors', []):
        st.error(f"Error: {error}")

    display_detailed_results(report)


def display_detailed_results(report: dict):
    """Expectation table, per-step check expanders with witnesses, downloads."""
    st.header("🔍 Detailed Results")
    st.subheader("Expectations")
    st.dataframe(report_to_frame(report), use_container_width=True)

    failures = get_failed_checks(report)
    for label, step in report.get('steps', {}).items():
        step_passed = step.get('summary', {}).get('overall_passed', False)
        with st.expander(f"{'✅' if step_passed else '❌'} Step: {label}", expanded=not step_passed):
            st.dataframe(report_to_frame(step), use_container_width=True)
            for check in failures['step_failures'].get(label, []):
                st.write(f"**{check.get('check_type', 'unknown').replace('_', ' ').title()}**: "
                         f"{check.get('message', 'No message')}")
                if check.get('witnesses'):
                    st.json(check['witnesses'])

    with st.expander("🔧 Raw Report (JSON)", expanded=False):
        st.json(strip_timing(report))

    st.header("💾 Download Options")
    col1, col2, col3 = st.columns(3)
    with col1:
        st.download_button(
            label="📄 Download Report (JSON)",
            data=json.dumps(strip_timing(report), indent=2, sort_keys=True, default=str),
            file_name=f"report_{report.get('scenario', 'scenario')}.json",
            mime="application/json",
            help="The complete report, without timing, as JSON"
        )
    with col2:
        st.download_button(
            label="📋 Download Summary (TXT)",
            data=format_report_summary(report),
            file_name=f"summary_{report.get('scenario', 'scenario')}.txt",
            mime="text/plain",
            help="A formatted summary of the report"
        )
    with col3:
        st.download_button(
            label="📈 Download Step Checks (CSV)",
            data=step_frame(report).to_csv(index=False),
            file_name=f"checks_{report.get('scenario', 'scenario')}.csv",
            mime="text/csv",
            help="Every step check as one CSV row"
        )


if __name__ == "__main__":
    main()
