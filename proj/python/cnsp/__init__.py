"""CNSP sensor-stream analytics: codec, EMG features, rough-set screening, stats."""

from cnsp._core import (
    anova_oneway,
    attribute_weights,
    parse_line,
    run_session_jsonl,
    screen_table,
    serialize_frame,
    simulate_lines,
    t_test,
    trimmed_average,
    window_features,
)

__all__ = [
    "anova_oneway",
    "attribute_weights",
    "parse_line",
    "run_session_jsonl",
    "screen_table",
    "serialize_frame",
    "simulate_lines",
    "t_test",
    "trimmed_average",
    "window_features",
]
