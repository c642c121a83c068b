import pytest
from hypothesis import strategies as st

from partialcp.corpus import cycle, disjoint_union, shift
from partialcp.partial import PartialSystem


@pytest.fixture
def sigma3():
    return shift(3)


@pytest.fixture
def cycle2():
    return cycle(2)


@pytest.fixture
def cycle_chain():
    return disjoint_union(cycle(1), shift(2))


@st.composite
def systems(draw, max_blocks=5, dims=(1, 2)):
    """Random partial injections respecting block dimensions."""
    n = draw(st.integers(0, max_blocks))
    ids = [f"b{i}" for i in range(n)]
    dim = {b: draw(st.sampled_from(dims)) for b in ids}
    pairs = []
    used = set()
    for b in ids:
        options = [t for t in ids if dim[t] == dim[b] and t not in used]
        t = draw(st.one_of(st.none(), st.sampled_from(options))) if options else None
        if t is not None:
            used.add(t)
            pairs.append((b, t))
    return PartialSystem.build([(b, dim[b]) for b in ids], pairs)


def random_generators(rng, max_ambient=6):
    """Block-diagonal generators with small Gaussian-integer entries."""
    from partialcp.exact import Gaussian

    n = rng.randint(1, max_ambient)
    sizes = []
    left = n
    while left:
        k = rng.randint(1, left)
        sizes.append(k)
        left -= k
    gens = []
    for _ in range(rng.randint(1, 3)):
        m = [[0] * n for _ in range(n)]
        off = 0
        for k in sizes:
            for i in range(k):
                for j in range(k):
                    if rng.random() < 0.6:
                        m[off + i][off + j] = Gaussian(rng.randint(-2, 2), rng.randint(-2, 2))
            off += k
        gens.append(tuple(tuple(r) for r in m))
    return gens
