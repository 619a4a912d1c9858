"""Test configuration and fixtures"""

from pathlib import Path

import pytest

from rootpoly.cache import MemoryCache
from rootpoly.cache import set_cache
from rootpoly.planar import PlaneQuiver
from rootpoly.poset import FinitePoset
from rootpoly.poset import StarredPoset
from rootpoly.quiver import StarredQuiver

DATA_DIR = Path(__file__).parent / "data"

# Two chains v1 < v2 < v3 < v4 and v1 < v5 < v6 joined by v2 < v6,
# entered from one star and leaving into two separate stars
CHAIN_ARROWS = [
    ("s0", "v1"),
    ("v1", "v2"),
    ("v2", "v3"),
    ("v3", "v4"),
    ("v4", "s1"),
    ("v1", "v5"),
    ("v5", "v6"),
    ("v2", "v6"),
    ("v6", "s2"),
]

# (offset, bullet labeling) of every facet of the chain quiver
CHAIN_FACETS = [
    (3, 2, 2, 1, 2, 1),
    (3, 2, 1, 0, 2, 1),
    (3, 2, 1, 1, 2, 1),
    (-1, -2, -3, 1, -2, -3),
    (-1, -2, -3, 1, 2, 1),
    (-1, 2, 1, 1, 2, 1),
    (-1, 2, 1, 1, -2, 1),
    (-1, -2, -3, 1, -2, 1),
    (-1, -2, 2, 1, -2, 1),
    (-1, 2, 2, 1, -2, 1),
    (-1, 2, 2, 1, 2, 1),
    (-1, -2, 2, 1, 2, 1),
    (-1, -2, 2, 1, -2, -3),
    (-1, -2, -3, -4, -2, 1),
    (-1, 2, 1, 0, -2, 1),
    (-1, 2, 1, 0, 2, 1),
    (-1, -2, -3, -4, 2, 1),
    (-1, -2, -3, -4, -2, -3),
]


@pytest.fixture(autouse=True)
def fresh_cache():
    """Give every test its own hull cache"""
    set_cache(MemoryCache())
    yield


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def segment() -> StarredQuiver:
    """s -> v -> t, Root is [-1, 1]"""
    return StarredQuiver.from_arrows(["v"], ["s", "t"], [("s", "v"), ("v", "t")])


@pytest.fixture
def square_quiver() -> StarredQuiver:
    """Two normal vertices and one star; Root is a unimodular quadrilateral"""
    return StarredQuiver.from_arrows(["v1", "v2"], ["*"], [("*", "v1"), ("v1", "*"), ("v1", "v2"), ("v2", "*")])


@pytest.fixture
def chain_quiver() -> StarredQuiver:
    """Hasse quiver of two joined chains, 6 normal vertices and 3 stars"""
    return StarredQuiver.from_arrows([f"v{i}" for i in range(1, 7)], ["s0", "s1", "s2"], CHAIN_ARROWS)


@pytest.fixture
def chain_poset() -> StarredPoset:
    """The chain quiver read as a starred poset"""
    elements = ("s0", *(f"v{i}" for i in range(1, 7)), "s1", "s2")
    return StarredPoset(FinitePoset(elements, tuple(CHAIN_ARROWS)), ("s0", "s1", "s2"))


@pytest.fixture
def three_cycle_quiver() -> StarredQuiver:
    """Three normal vertices in a path of 2-cycles between two stars (Fano index 2)"""
    return StarredQuiver.from_arrows(
        ["v1", "v2", "v3"],
        ["sa", "sb"],
        [("sa", "v1"), ("v1", "v2"), ("v2", "v1"), ("v2", "v3"), ("v3", "v2"), ("v3", "sb"), ("sb", "v3")],
    )


@pytest.fixture
def ranked_poset() -> FinitePoset:
    """Ranked but not graded: maxima e (rank 3) and f (rank 4)"""
    return FinitePoset(
        tuple("abcdef"),
        (("a", "b"), ("a", "c"), ("b", "d"), ("b", "e"), ("c", "e"), ("d", "f")),
    )


@pytest.fixture
def unranked_poset() -> FinitePoset:
    """Not ranked; the face fan of its bounded quiver does not refine the order polytope's normal fan"""
    elements = tuple(f"v{i}" for i in range(1, 9))
    covers = (("v1", "v7"), ("v2", "v8"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v5", "v6"), ("v6", "v7"))
    return FinitePoset(elements, covers)


@pytest.fixture
def merging_poset() -> FinitePoset:
    """Ranked poset with four maxima whose canonical extension has three tops"""
    elements = ("v1", "v2", "v3", "v4", "v5", "v6", "v7", "mj1", "mj2", "mk", "ml")
    covers = (
        ("v1", "v3"),
        ("v1", "v4"),
        ("v2", "v4"),
        ("v2", "v5"),
        ("v3", "mj1"),
        ("v3", "v6"),
        ("v4", "v6"),
        ("v4", "mj2"),
        ("v5", "mj2"),
        ("v5", "v7"),
        ("v6", "mk"),
        ("v7", "ml"),
    )
    return FinitePoset(elements, covers)


@pytest.fixture
def lens_plane_quiver() -> PlaneQuiver:
    """Two parallel arrows L -> R under a triangle L, R, T

    r1 is drawn curving below r2, so the bounded faces are the lens between
    r1 and r2 and the triangle r2, r3, r4.
    """
    return PlaneQuiver.build(
        ["L", "R", "T"],
        {"r1": ("L", "R"), "r2": ("L", "R"), "r3": ("R", "T"), "r4": ("L", "T")},
        {"L": ["r2", "r4", "r1"], "R": ["r3", "r2", "r1"], "T": ["r4", "r3"]},
        ["r1", "r3", "r4"],
    )


@pytest.fixture
def diamond_plane_quiver() -> PlaneQuiver:
    """u -> v -> z and u -> w -> z drawn as a square"""
    from rootpoly.planar import plane_quiver_from_coordinates

    return plane_quiver_from_coordinates(
        ["u", "v", "w", "z"],
        {"uv": ("u", "v"), "uw": ("u", "w"), "vz": ("v", "z"), "wz": ("w", "z")},
        {"u": (0, 0), "v": (2, -1), "w": (2, 1), "z": (4, 0)},
    )


@pytest.fixture
def lens_dual_quiver(lens_plane_quiver) -> StarredQuiver:
    """Dual starred quiver of the lens drawing"""
    from rootpoly.planar import dual_quiver

    return dual_quiver(lens_plane_quiver).quiver
