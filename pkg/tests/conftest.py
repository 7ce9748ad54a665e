import numpy as np
import pytest

from gdt import Signal, builtin, normalize


def nyquist_free(rng, N, scale=1.0):
    """Standard-normal samples with the Nyquist bin projected out."""
    spectrum = np.fft.rfft(scale * rng.standard_normal(N))
    spectrum[N // 2] = 0.0
    return Signal(np.fft.irfft(spectrum, n=N))


@pytest.fixture
def rng():
    return np.random.default_rng(20241017)


@pytest.fixture
def square():
    return normalize(builtin("square", 99))


@pytest.fixture
def cosine():
    return normalize(builtin("cosine", 1))


# one "PASS/FAIL" line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = {}


def record_criterion(number, title, passed, detail=""):
    line = f"{'PASS' if passed else 'FAIL'}  criterion {number:>2}: {title}"
    if detail:
        line += f"  ({detail})"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
