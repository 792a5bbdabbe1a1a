from __future__ import annotations

import pytest

from sphersing.coloredfan import ColoredFan
from sphersing.corpus import load_corpus
from sphersing.homspace import Color, ColorType, SphericalSpace


def horospherical(rank: int, colors=()) -> SphericalSpace:
    return SphericalSpace.from_spherical_roots(rank, [], list(colors))


def toric(cones, rank: int | None = None, name: str = "") -> ColoredFan:
    """Colorless fan over a horospherical space without colors."""
    rank = rank or len(cones[0][0])
    return ColoredFan.build(horospherical(rank), [(rays, []) for rays in cones], name)


def b_color(name, sigma, a=2) -> Color:
    return Color(name, tuple(sigma), ColorType.B, a)


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def sl3u(corpus) -> SphericalSpace:
    return corpus.space


@pytest.fixture(scope="session")
def three_cone(sl3u) -> ColoredFan:
    return ColoredFan.build(sl3u, [
        ([(1, 0), (0, 1)], ["D_alpha", "D_beta"]),
        ([(0, 1), (-1, -1)], ["D_beta"]),
        ([(-1, -1), (1, 0)], ["D_alpha"]),
    ], "three-cone")


def three_color_space(a_gamma: int = 2) -> SphericalSpace:
    return horospherical(2, [b_color("Da", (1, 0)), b_color("Db", (0, 1)), b_color("Dc", (1, 1), a_gamma)])


def three_color_fan(a_gamma: int = 2) -> ColoredFan:
    space = three_color_space(a_gamma)
    return ColoredFan.build(space, [([(1, 0), (0, 1)], ["Da", "Db", "Dc"])], f"three-color-{a_gamma}")


HALF_111 = [(1, 0, 0), (0, 1, 0), (1, 1, 2)]


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'} | {detail}"
    print(ACCEPTANCE_LINES[number])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
