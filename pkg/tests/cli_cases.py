"""The six golden CLI invocations: (name, argv without --out)."""

GOLDEN_CASES = [
    ("line_hypersurface", ["hypersurface", "fixtures/line.json"]),
    ("univariate_hypersurface", ["hypersurface", "fixtures/univariate.json"]),
    ("two_lines_stable", ["stable-intersect", "fixtures/two_lines.json"]),
    ("conic_cubic_mixed", ["mixed-volume", "fixtures/conic_cubic.json", "--indices", "0", "1"]),
    ("square_degree", ["degree-bound", "fixtures/square_degree.json"]),
    ("bezout_codim1", ["bezout-bound", "fixtures/bezout.json", "--codim", "1"]),
]
