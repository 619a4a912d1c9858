"""Hypothesis strategies for quivers, posets and plane drawings"""

from hypothesis import strategies as st

from rootpoly.planar import PlaneQuiver
from rootpoly.planar import plane_quiver_from_coordinates
from rootpoly.poset import FinitePoset
from rootpoly.quiver import StarredQuiver


@st.composite
def starred_quivers(draw, max_normal: int = 4, max_stars: int = 2) -> StarredQuiver:
    """Strongly connected starred quivers

    A directed path through every vertex from the first star back to a star
    guarantees strong connectivity; the remaining arrows are random.
    """
    n = draw(st.integers(min_value=1, max_value=max_normal))
    k = draw(st.integers(min_value=1, max_value=max_stars))
    normal = [f"v{i}" for i in range(1, n + 1)]
    stars = [f"s{i}" for i in range(k)]
    backbone = [(stars[0], normal[0])] + [(normal[i], normal[i + 1]) for i in range(n - 1)]
    backbone.append((normal[-1], stars[-1]))
    candidates = [(u, v) for u in normal + stars for v in normal + stars if u != v]
    candidates = [(u, v) for u, v in candidates if not (u in stars and v in stars) and (u, v) not in backbone]
    extra = draw(st.lists(st.sampled_from(candidates), max_size=2 * n, unique=True)) if candidates else []
    return StarredQuiver.from_arrows(normal, stars, backbone + extra)


@st.composite
def ranked_posets(draw, max_levels: int = 3, max_width: int = 2, max_elements: int | None = None) -> FinitePoset:
    """Ranked posets built level by level, covers only between consecutive levels

    ``max_elements`` caps the total size; every level keeps at least one element.
    """
    if max_elements is not None:
        max_levels = min(max_levels, max_elements)
    levels = draw(st.integers(min_value=1, max_value=max_levels))
    layers: list[list[str]] = []
    remaining = levels * max_width if max_elements is None else max_elements
    for level in range(levels):
        room = remaining - (levels - level - 1)
        width = draw(st.integers(min_value=1, max_value=min(max_width, room)))
        remaining -= width
        layers.append([f"p{level}_{j}" for j in range(width)])
    covers = []
    for lower_layer, upper_layer in zip(layers, layers[1:]):
        for upper in upper_layer:
            below = draw(st.lists(st.sampled_from(lower_layer), min_size=1, unique=True))
            covers += [(lower, upper) for lower in below]
    elements = tuple(e for layer in layers for e in layer)
    return FinitePoset(elements, tuple(covers))


@st.composite
def graded_posets(draw, max_levels: int = 3, max_width: int = 2) -> FinitePoset:
    """Ranked posets whose maximal elements all sit on the top level"""
    p = draw(ranked_posets(max_levels=max_levels, max_width=max_width))
    top = max(int(e[1:].split("_")[0]) for e in p.elements)
    covers = list(p.covers)
    by_level: dict[int, list[str]] = {}
    for e in p.elements:
        by_level.setdefault(int(e[1:].split("_")[0]), []).append(e)
    for e in p.maximal:
        level = int(e[1:].split("_")[0])
        if level < top:
            covers.append((e, draw(st.sampled_from(by_level[level + 1]))))
    return FinitePoset(p.elements, tuple(covers))


@st.composite
def outerplanar_quivers(draw, max_vertices: int = 5) -> PlaneQuiver:
    """Acyclic plane quivers on points of the parabola

    Points ``(t, t^2)`` are in convex position, so the polygon edges plus
    chords from the first point never cross. Arrows run towards larger ``t``.
    """
    m = draw(st.integers(min_value=3, max_value=max_vertices))
    vertices = [f"p{t}" for t in range(m)]
    pairs = {(t, t + 1) for t in range(m - 1)} | {(0, m - 1)}
    chords = draw(st.lists(st.integers(min_value=2, max_value=m - 2), unique=True)) if m > 3 else []
    pairs |= {(0, k) for k in chords}
    arrows = {f"a{t}_{u}": (vertices[t], vertices[u]) for t, u in sorted(pairs)}
    coordinates = {vertices[t]: (t, t * t) for t in range(m)}
    return plane_quiver_from_coordinates(vertices, arrows, coordinates)
