import pytest

# The six-row toy dataset used across the metric, dataset, and CLI tests.
EXAMPLE_ROWS = ("1A", "1B", "2B", "2C", "1A", "2B")
EXAMPLE_LABELS = ("1", "1", "2", "2", "1", "2")

# Verdict lines appended by the acceptance tests, echoed after the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


@pytest.fixture
def example_rows():
    return EXAMPLE_ROWS


@pytest.fixture
def example_labels():
    return EXAMPLE_LABELS


@pytest.fixture
def example_csv(tmp_path):
    path = tmp_path / "example.csv"
    lines = ["text,label"]
    lines += [f"{t},{l}" for t, l in zip(EXAMPLE_ROWS, EXAMPLE_LABELS)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def example_jsonl(tmp_path):
    import json

    path = tmp_path / "example.jsonl"
    with path.open("w", encoding="utf-8") as fh:
        for t, l in zip(EXAMPLE_ROWS, EXAMPLE_LABELS):
            fh.write(json.dumps({"text": t, "label": l}) + "\n")
    return path


def first_char_oracle(seq):
    """IsNew on strings keyed by their first character."""
    last = seq[-1][0]
    return 0 if any(s[0] == last for s in seq[:-1]) else 1


def second_char_oracle(seq):
    last = seq[-1][1]
    return 0 if any(s[1] == last for s in seq[:-1]) else 1
