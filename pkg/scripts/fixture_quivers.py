"""
Named quivers and Ext tables used as test fixtures.

Every entry is a plain JSON document in the quiver or Ext table format, so
scripts/gen_fixtures.py can write them verbatim into tests/fixtures/.
"""

import random

QUIVERS = {
    # One degree-0 loop, d=3: the double quiver has x and its dual of degree -1.
    "one_loop_d3": {
        "d": 3,
        "half": True,
        "vertices": ["1"],
        "arrows": [{"id": "x", "src": "1", "tgt": "1", "deg": 0}],
    },
    # d=4 with a degree-0 loop x and a middle-degree loop y.
    "xy_d4": {
        "d": 4,
        "half": True,
        "vertices": ["1"],
        "arrows": [
            {"id": "x", "src": "1", "tgt": "1", "deg": 0},
            {"id": "y", "src": "1", "tgt": "1", "deg": -1},
        ],
    },
    "two_vertex_d3": {
        "d": 3,
        "half": True,
        "vertices": ["1", "2"],
        "arrows": [
            {"id": "a", "src": "1", "tgt": "2", "deg": 0},
            {"id": "b", "src": "2", "tgt": "1", "deg": 0},
        ],
    },
    # Middle-degree 2-cycle between distinct vertices: not allowed at d=4.
    "two_cycle_d4": {
        "d": 4,
        "half": True,
        "vertices": ["1", "2"],
        "arrows": [
            {"id": "a", "src": "1", "tgt": "2", "deg": -1},
            {"id": "b", "src": "2", "tgt": "1", "deg": -1},
        ],
    },
    "empty_d3": {"d": 3, "half": True, "vertices": ["1"], "arrows": []},
}

EXT_TABLES = {
    "one_loop_d3_ext": {"d": 3, "vertices": ["1"], "dims": {"1,1": [1, 1, 1, 1]}},
    "two_vertex_d4_ext": {
        "d": 4,
        "vertices": ["1", "2"],
        "dims": {
            "1,1": [1, 0, 2, 0, 1],
            "1,2": [0, 1, 1, 0, 0],
            "2,1": [0, 0, 1, 1, 0],
            "2,2": [1, 0, 0, 0, 1],
        },
    },
}


def random_ext_table(rng, d, vertices=("1", "2"), max_dim=2):
    """A valid Ext table: Ext^0 = k on the diagonal, CY symmetric, even middle on the diagonal."""
    dims = {(i, j): [0] * (d + 1) for i in vertices for j in vertices}
    for i in vertices:
        dims[(i, i)][0] = 1
        dims[(i, i)][d] = 1
    for n, i in enumerate(vertices):
        for j in vertices[n:]:
            for k in range(1, (d + 1) // 2 + (d % 2 == 0)):
                if 2 * k == d:
                    value = rng.randint(0, max_dim)
                    if i == j:
                        value = 2 * (value // 2)
                    dims[(i, j)][k] = value
                    dims[(j, i)][k] = value
                    continue
                dims[(i, j)][k] = rng.randint(0, max_dim)
                dims[(j, i)][d - k] = dims[(i, j)][k]
                if i != j:
                    dims[(j, i)][k] = rng.randint(0, max_dim)
                    dims[(i, j)][d - k] = dims[(j, i)][k]
    return {
        "d": d,
        "vertices": list(vertices),
        "dims": {f"{i},{j}": row for (i, j), row in dims.items()},
    }


def random_ext_tables(seed=0, count=10, ds=(3, 4), max_vertices=2, max_dim=2):
    """`count` valid tables with 1 to `max_vertices` vertices and entries up to `max_dim`."""
    rng = random.Random(seed)
    tables = []
    for _ in range(count):
        vertices = tuple(str(i) for i in range(1, rng.randint(1, max_vertices) + 1))
        tables.append(random_ext_table(rng, rng.choice(ds), vertices, max_dim))
    return tables
