"""Unit tests for Streamlit app logic."""

import json

import pytest
from unittest.mock import MagicMock, Mock, patch

from app import display_detailed_results, display_results


@pytest.fixture
def mock_streamlit():
    """Mock Streamlit components for testing."""
    with patch('app.st') as mock_st:
        mock_st.header = Mock()
        mock_st.subheader = Mock()
        mock_st.write = Mock()
        mock_st.error = Mock()
        mock_st.success = Mock()
        mock_st.warning = Mock()
        mock_st.metric = Mock()
        mock_st.columns = Mock(side_effect=lambda n: [MagicMock() for _ in range(n)])
        mock_st.dataframe = Mock()
        mock_st.json = Mock()
        mock_st.download_button = Mock()

        mock_expander = MagicMock()
        mock_expander.__enter__ = Mock(return_value=mock_expander)
        mock_expander.__exit__ = Mock(return_value=None)
        mock_st.expander = Mock(return_value=mock_expander)

        yield mock_st


@pytest.fixture
def sample_report():
    """A failed scenario report with one failing step."""
    return {
        'scenario': 'quadform-classify-n2',
        'window': 1,
        'duration_s': 0.25,
        'summary': {
            'total_checks': 2,
            'passed_checks': 1,
            'failed_checks': 1,
            'overall_passed': False,
            'success_rate': 50.0,
        },
        'checks': [
            {'check_type': 'expect_class_count', 'passed': False,
             'witnesses': [{'expected': 5, 'observed': 4}],
             'message': "Expectation class_count check failed: expected 5, observed 4"},
            {'check_type': 'expect_orbit_sizes', 'passed': True, 'witnesses': [],
             'message': "Expectation orbit_sizes check passed"},
        ],
        'errors': [],
        'diff': {'class_count': {'expected': 5, 'observed': 4}},
        'steps': {
            'classify(2)': {
                'summary': {'total_checks': 1, 'passed_checks': 0, 'failed_checks': 1,
                            'overall_passed': False, 'success_rate': 0.0},
                'checks': [{'check_type': 'jacobi', 'passed': False, 'witnesses': [[1, 0]],
                            'message': "Jacobi check failed: 1 violation"}],
                'errors': [],
            },
        },
    }


def test_display_results_failed(mock_streamlit, sample_report):
    display_results(sample_report)

    mock_streamlit.header.assert_any_call("📊 Summary Dashboard")
    mock_streamlit.warning.assert_called_once()
    mock_streamlit.success.assert_not_called()
    mock_streamlit.json.assert_any_call(sample_report['diff'])
    assert mock_streamlit.metric.call_count == 4


def test_display_results_passed(mock_streamlit, sample_report):
    sample_report['summary']['overall_passed'] = True
    sample_report['diff'] = {}
    display_results(sample_report)

    mock_streamlit.success.assert_called_once_with("✅ All expected outcomes observed!")
    mock_streamlit.warning.assert_not_called()


def test_display_results_without_checks(mock_streamlit):
    display_results({'checks': [], 'errors': ['Scenario broken failed: boom'], 'summary': {}})

    mock_streamlit.error.assert_any_call("❌ The scenario produced no results")
    mock_streamlit.error.assert_any_call("Error: Scenario broken failed: boom")
    mock_streamlit.metric.assert_not_called()


def test_display_detailed_results(mock_streamlit, sample_report):
    display_detailed_results(sample_report)

    mock_streamlit.expander.assert_any_call("❌ Step: classify(2)", expanded=True)
    mock_streamlit.write.assert_any_call("**Jacobi**: Jacobi check failed: 1 violation")
    mock_streamlit.json.assert_any_call([[1, 0]])
    assert mock_streamlit.download_button.call_count == 3


def test_download_report_has_no_timing(mock_streamlit, sample_report):
    display_detailed_results(sample_report)

    report_call = mock_streamlit.download_button.call_args_list[0]
    payload = json.loads(report_call.kwargs['data'])
    assert 'duration_s' not in payload
    assert report_call.kwargs['file_name'] == "report_quadform-classify-n2.json"

    csv_call = mock_streamlit.download_button.call_args_list[2]
    assert csv_call.kwargs['data'].startswith("step,check_type,passed,witnesses,message")
