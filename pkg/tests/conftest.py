import warnings
from fractions import Fraction

import pytest

from cegames import build_game, example_path, load_instance
from cegames.generate import PROFILES, random_situation
from cegames.model import OverSupplyPenaltyWarning

warnings.simplefilter("ignore", OverSupplyPenaltyWarning)


def example_situation(k):
    return load_instance(example_path(k)).situation


@pytest.fixture(scope="session")
def examples():
    return {k: build_game(example_situation(k)) for k in range(1, 6)}


def random_games(count, n_min=2, n_max=8, profiles=PROFILES, offset=0):
    """Deterministic stream of (label, game) pairs cycling sizes and profiles."""
    out = []
    span = n_max - n_min + 1
    for k in range(count):
        n = n_min + k % span
        profile = profiles[k % len(profiles)]
        seed = offset + k
        out.append((f"{profile}-n{n}-s{seed}", build_game(random_situation(n, seed, profile))))
    return out


def close(x, target, tol):
    return abs(Fraction(x) - Fraction(str(target))) <= Fraction(str(tol))


# acceptance verdicts, criterion number -> [(check, ok, detail)]
ACCEPTANCE: dict[int, list] = {}


def record(criterion, check, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {check}"
    if detail:
        line += f" ({detail})"
    print(line)
    ACCEPTANCE.setdefault(criterion, []).append((check, ok, detail))
    return line


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[criterion]
        failed = [c for c, ok, _ in checks if not ok]
        if failed:
            terminalreporter.write_line(
                f"FAIL  criterion {criterion}: {len(failed)} of {len(checks)} checks failed: {', '.join(failed)}"
            )
        else:
            terminalreporter.write_line(f"PASS  criterion {criterion}: {len(checks)} checks")
