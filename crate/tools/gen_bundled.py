#!/usr/bin/env python3
"""Offline generator for the bundled incidence data in crates/core/data/.

Builds the Klein (21 lines), Wiman (45 lines) and A1(15) (15 lines)
arrangements in floating point, clusters intersection points by the set of
lines passing through them (tolerance 1e-9 on normalized vectors), and freezes
the resulting integer incidence as JSON. The Rust crate never recomputes this
at runtime; rerun the script only to regenerate the files.

    python3 tools/gen_bundled.py crates/core/data
"""
import itertools
import json
import sys

import numpy as np

TOL = 1e-9


def proj_key(m):
    flat = m.flatten()
    i = int(np.argmax(np.abs(flat) > 1e-7))
    n = m / flat[i]
    return tuple(np.round(n.real, 6).flatten().tolist() + np.round(n.imag, 6).flatten().tolist())


def closure(gens, limit=5000):
    ident = np.eye(3, dtype=complex)
    seen = {proj_key(ident): ident}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a @ g
                k = proj_key(b)
                if k not in seen:
                    seen[k] = b
                    order.append(b)
                    nxt.append(b)
                    if len(seen) > limit:
                        raise RuntimeError("group closure exceeded limit")
        frontier = nxt
    return order


def mirror_lines(group):
    """Lines fixed pointwise by the projective involutions of `group`."""
    lines = []
    for m in group:
        sq = m @ m
        c = sq[0, 0] if abs(sq[0, 0]) > 1e-7 else sq[1, 1]
        if not np.allclose(sq, c * np.eye(3), atol=1e-8):
            continue
        if np.allclose(m, m[0, 0] * np.eye(3), atol=1e-8) if abs(m[0, 0]) > 1e-7 else False:
            continue
        if np.allclose(m / np.sqrt(c), np.eye(3), atol=1e-8) or np.allclose(m / np.sqrt(c), -np.eye(3), atol=1e-8):
            continue
        inv = m / np.sqrt(c)
        vals, vecs = np.linalg.eig(inv.T)
        # the simple eigenvalue carries the left eigenvector defining the mirror
        plus = [i for i in range(3) if abs(vals[i] - 1) < 1e-6]
        minus = [i for i in range(3) if abs(vals[i] + 1) < 1e-6]
        simple = plus if len(plus) == 1 else minus
        assert len(simple) == 1, vals
        lines.append(normalize(vecs[:, simple[0]]))
    return dedupe(lines)


def normalize(v):
    v = np.asarray(v, dtype=complex)
    return v / np.linalg.norm(v)


def same(u, v):
    return np.linalg.norm(np.cross(u, v)) < 1e-7


def dedupe(vs):
    out = []
    for v in vs:
        if not any(same(v, w) for w in out):
            out.append(v)
    return out


def incidence(lines):
    """Group all pairwise meets by the exact set of lines through them."""
    groups = {}
    for i, j in itertools.combinations(range(len(lines)), 2):
        p = normalize(np.cross(lines[i], lines[j]))
        on = tuple(k for k, l in enumerate(lines) if abs(np.dot(l, p)) < TOL)
        assert i in on and j in on
        groups.setdefault(on, p)
    pts = sorted(groups.items())
    return [list(on) for on, _ in pts], [p for _, p in pts]


def points_on(line, coords):
    return [i for i, p in enumerate(coords) if abs(np.dot(line, p)) < TOL]


def klein():
    z = np.exp(2j * np.pi / 7)
    s = np.diag([z**4, z**2, z])
    t = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex)
    a, b, c = z - z**6, z**2 - z**5, z**4 - z**3
    r = (-1 / np.sqrt(-7 + 0j)) * np.array([[a, b, c], [b, c, a], [c, a, b]])
    g = closure([s, t, r])
    assert len(g) == 168
    return mirror_lines(g)


def wiman():
    tau = (1 + 5**0.5) / 2
    t = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex)
    d = np.diag([1, -1, -1]).astype(complex)
    h = 0.5 * np.array([[1, -tau, 1 / tau], [tau, 1 / tau, -1], [1 / tau, 1, tau]], dtype=complex)
    w = np.exp(2j * np.pi / 3)
    extra = np.array([[1, 0, 0], [0, 0, w * w], [0, w, 0]], dtype=complex)
    g = closure([t, d, h, extra])
    assert len(g) == 360, len(g)
    return mirror_lines(g)


def a1_15():
    """Regular pentagon with side 4 (coordinates as in the reference drawing):
    five sides, five diagonals, five symmetry axes; plus the cover L1..L6."""
    c72, s72 = np.cos(2 * np.pi / 5), np.sin(2 * np.pi / 5)
    verts = [np.array([0.0, 0.0]), np.array([4.0, 0.0])]
    for _ in range(4):
        a, b = verts[-2], verts[-1]
        dx, dy = b - a
        verts.append(b + np.array([dx * c72 - dy * s72, dx * s72 + dy * c72]))
    assert np.linalg.norm(verts[5] - verts[0]) < 1e-9
    verts = verts[:5]
    centre = sum(verts) / 5

    def join(p, q):
        return normalize(np.cross(np.array([*p, 1.0]), np.array([*q, 1.0])).astype(complex))

    sides = [join(verts[i], verts[(i + 1) % 5]) for i in range(5)]
    diags = [join(verts[i], verts[(i + 2) % 5]) for i in range(5)]
    axes = [join(verts[i], centre) for i in range(5)]
    lines = sides + diags + axes
    # L1 is y = h/2 (not an arrangement line)
    half = verts[2][1] / 2
    cover = {
        "L1": normalize(np.array([0, 1, -half], dtype=complex)),
        "L2": normalize(np.array([2.3511410091698934, 3.2360679774997894, -24.621468297402025], dtype=complex)),
        "L3": normalize(np.array([6.155367074350506, 2.0, -24.621468297402025], dtype=complex)),
        "L4": normalize(np.array([1, 0, -2], dtype=complex)),
        "L5": normalize(np.array([6.155367074350506, -2.0, 0], dtype=complex)),
        "L6": normalize(np.array([2.3511410091698917, -3.23606797749979, 15.216904260722456], dtype=complex)),
    }
    return lines, cover


def tk(points):
    out = {}
    for on in points:
        out[len(on)] = out.get(len(on), 0) + 1
    return dict(sorted(out.items()))


def emit(path, name, source, d, points, virtual=None):
    doc = {
        "format": 1,
        "kind": "incidence",
        "name": name,
        "source": source,
        "num_lines": d,
        "points": [{"id": i, "lines": on} for i, on in enumerate(points)],
    }
    if virtual:
        doc["virtual_lines"] = [{"name": k, "points": v} for k, v in virtual]
    with open(path, "w") as fh:
        fh.write(compact(doc))


def compact(doc):
    """Pretty JSON with one point or virtual line per row."""
    rows = []
    for key, val in doc.items():
        if isinstance(val, list):
            items = ",\n".join("    " + json.dumps(v) for v in val)
            rows.append(f'  "{key}": [\n{items}\n  ]')
        else:
            rows.append(f"  {json.dumps(key)}: {json.dumps(val)}")
    return "{\n" + ",\n".join(rows) + "\n}\n"


def main(out):
    kl = klein()
    assert len(kl) == 21
    kp, _ = incidence(kl)
    assert tk(kp) == {3: 28, 4: 21}, tk(kp)
    emit(f"{out}/klein.json", "klein", "mirrors of the 21 involutions of PSL(2,7) acting on P^2", 21, kp)

    wm = wiman()
    assert len(wm) == 45
    wp, _ = incidence(wm)
    assert tk(wp) == {3: 120, 4: 45, 5: 36}, tk(wp)
    emit(f"{out}/wiman.json", "wiman", "mirrors of the 45 involutions of the Valentiner group A6", 45, wp)

    al, cover = a1_15()
    ap, coords = incidence(al)
    assert tk(ap) == {2: 15, 3: 10, 5: 6}, tk(ap)
    virtual = []
    line_sets = [set(points_on(l, coords)) for l in al]
    for name, line in cover.items():
        on = points_on(line, coords)
        # L1 is new; L2..L6 coincide with arrangement lines
        assert (set(on) in line_sets) == (name != "L1"), name
        virtual.append((name, on))
    covered = set().union(*[set(v) for _, v in virtual])
    assert covered == set(range(len(ap))), "virtual cover misses points"
    emit(f"{out}/a1_15.json", "a1_15", "sides, diagonals and symmetry axes of a regular pentagon; virtual lines L1..L6 form a six-line cover", 15, ap, virtual)
    for name, on in virtual:
        print(name, len(on), on)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "crates/core/data")
