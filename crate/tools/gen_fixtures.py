"""Regenerates the offline field corpus under crates/core/fixtures/lmfdb/.

Every value is computed with PARI/GP (via the `cypari` wheel), independently of the
Rust code: polredabs for the defining polynomial, nfdisc for the field discriminant,
polgalois for the transitive label, nfsubfields for subfields and the CM flag.
Records use the field names of the database JSON API so the same parser reads both.

    pip install cypari
    python3 tools/gen_fixtures.py
"""

import itertools
import json
import math
import sys
from collections import defaultdict
from pathlib import Path

from cypari import pari

pari.default("new_galois_format", 1)
OUT = Path(__file__).resolve().parent.parent / "crates/core/fixtures/lmfdb"
PER_LABEL = 60
QUARTIC_XMAX = 6000


def poly(coeffs_desc):
    return pari("Pol(%s)" % list(coeffs_desc))


def ascending(f):
    return [int(c) for c in reversed(pari.Vec(f))]


def subfield_polys(f, d):
    return [pari.polredabs(s[0]) for s in pari.nfsubfields(f, d)]


def record(f, label_index=None):
    f = pari.polredabs(f)
    n = int(pari.poldegree(f))
    r1 = int(pari.polsturm(f))
    disc = int(pari.nfdisc(f))
    order, _, k, _ = pari.polgalois(f)
    subs = []
    for d in range(2, n):
        if n % d == 0:
            subs.extend(subfield_polys(f, d))
    cm = False
    if r1 == 0:
        cm = any(int(pari.poldegree(s)) == n // 2 and int(pari.polsturm(s)) == n // 2 for s in subs)
    return {
        "label": None if label_index is None else "%d.%d.%d.%d" % (n, r1, abs(disc), label_index),
        "coeffs": ascending(f),
        "degree": n,
        "r2": (n - r1) // 2,
        "disc_abs": abs(disc),
        "disc_sign": 1 if disc > 0 else -1,
        "galois_label": "%dT%d" % (n, int(k)),
        "cm": cm,
        "subfields": [ascending(s) for s in subs],
        "source": "pari",
    }


def assign_labels(records):
    """Index fields sharing degree, r1 and |disc| by their reduced polynomial."""
    groups = defaultdict(list)
    for r in records:
        groups[(r["degree"], r["r2"], r["disc_abs"])].append(r)
    for (n, r2, d), rs in groups.items():
        rs.sort(key=lambda r: [abs(c) for c in reversed(r["coeffs"])] + list(reversed(r["coeffs"])))
        for i, r in enumerate(rs, 1):
            if r["label"] is None:
                r["label"] = "%d.%d.%d.%d" % (n, n - 2 * r2, d, i)


def compositum(a, b):
    x, y = pari("x"), pari("y")
    for k in range(1, 10):
        g = pari.polresultant(pari.subst(a, x, y), pari.subst(b, x, x - k * y), y)
        if pari.issquarefree(g):
            return g
    raise RuntimeError("no squarefree compositum")


def named():
    x = pari("x")
    out = [
        record(pari("x^4 - x + 1"), 1),
        record(compositum(pari("x^3 - x - 1"), pari("x^2 + 3")), 1),
        record(compositum(pari("x^3 - x^2 - 4*x + 1"), pari("x^2 + 3")), 1),
        record(pari("x^6 - x^5 + 3*x^4 - x^3 + 3*x^2 - x + 1"), 1),
    ]
    expected = ["4.0.229.1", "6.0.14283.1", "6.0.309123.1", "6.0.29095.1"]
    assert [r["label"] for r in out] == expected, [r["label"] for r in out]
    return out


def sextic_search():
    """Totally imaginary sextics from a coefficient box, deduplicated by polredabs."""
    found = {}
    box = range(-3, 4)
    for c in itertools.product(range(0, 3), box, box, box, box, range(1, 5)):
        for s in (1, -1):
            coeffs = [1, *c[:-1], s * c[-1]]
            f = poly(coeffs)
            if pari.polsturm(f) != 0 or not pari.polisirreducible(f):
                continue
            key = str(pari.polredabs(f))
            if key not in found:
                found[key] = f
    return list(found.values())


def cubics(limit):
    """Reduced cubic fields from a small coefficient box."""
    seen = {}
    for a, b, c in itertools.product(range(0, 2), range(-12, 13), range(-12, 13)):
        if c == 0:
            continue
        f = poly([1, a, b, c])
        if pari.polisirreducible(f):
            g = pari.polredabs(f)
            seen.setdefault(str(g), g)
    fs = sorted(seen.values(), key=lambda g: abs(int(pari.nfdisc(g))))
    return fs[:limit]


def built_sextics():
    """Composita of cubic fields with imaginary quadratic fields, and Galois closures of
    complex cubics: these cover 6T1, 6T2 and 6T3, which are rare in a coefficient box."""
    out = {}
    quads = [pari("x^2 + %d" % m) for m in (1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23)]
    for g in cubics(400):
        d = int(pari.nfdisc(g))
        for q in quads:
            h = pari.polredabs(compositum(g, q))
            if pari.poldegree(h) == 6 and pari.polisirreducible(h):
                out.setdefault(str(h), h)
        if d < 0:
            h = pari.polredabs(compositum(g, pari("x^2 - (%d)" % d)))
            if pari.polisirreducible(h):
                out.setdefault(str(h), h)
    return list(out.values())


def from_roots(roots):
    """Integer polynomial with the given algebraic-integer roots, by rounding."""
    x = pari("x")
    p = pari(1)
    for r in roots:
        p = p * (x - r)
    coeffs = [c.real() for c in pari.Vec(p)]
    rounded = [c.round() for c in coeffs]
    if max(abs(float(c - r)) for c, r in zip(coeffs, rounded)) > 1e-30:
        return None
    f = pari("Pol(%s)" % [int(c) for c in rounded])
    if not pari.polisirreducible(f) or pari.polsturm(f) != 0:
        return None
    return f


def roots(f):
    return list(pari.polroots(f, precision=500))


def constructed():
    """Labels that a coefficient box rarely reaches, built from smaller fields."""
    pari.default("realprecision", 150)
    out = []
    cubic_pool = cubics(400)
    cyclic = [g for g in cubic_pool if math.isqrt(abs(int(pari.nfdisc(g)))) ** 2 == int(pari.nfdisc(g))]
    noncyclic = [g for g in cubic_pool if not math.isqrt(abs(int(pari.nfdisc(g)))) ** 2 == int(pari.nfdisc(g))]
    t, x = pari("t"), pari("x")
    # Quadratic extensions K(sqrt(beta)) of cubic fields: 2 wr C3 and 2 wr S3.
    for g in cyclic[:12] + noncyclic[:25]:
        gt = pari.subst(g, x, t)
        for a, b, c in itertools.product(range(-6, 2), range(-3, 4), range(-2, 3)):
            beta = a + b * t + c * t * t
            h = pari.polresultant(gt, x * x - beta, t)
            if pari.polisirreducible(h) and pari.polsturm(h) == 0:
                out.append(h)
    # Sums over the identity matching of roots of two cubics: C3 x S3 and S3 x S3.
    for g1, g2 in itertools.combinations(cubic_pool[:40], 2):
        r1, r2 = roots(g1), roots(g2)
        vals = [sum(r1[i] * r2[p[i]] for i in range(3)) for p in itertools.permutations(range(3))]
        f = from_roots(vals)
        if f is not None:
            out.append(f)
    # Oriented 4-cycle sums for quartics.
    for c in itertools.product(range(-4, 5), repeat=3):
        q = poly([1, 0, *c[:2], c[2] or 1])
        if not pari.polisirreducible(q):
            continue
        a = roots(q)
        vals = []
        for p in itertools.permutations(range(4)):
            if p[0] != 0:
                continue
            v = sum(a[p[i]] ** 2 * a[p[(i + 1) % 4]] for i in range(4))
            vals.append(v)
        f = from_roots(vals)
        if f is not None:
            out.append(f)
    # The sextic resolvent of quintics, stabiliser F20.
    for c in itertools.product(range(-3, 4), repeat=4):
        q = poly([1, 0, *c[:3], c[3] or 1])
        if not pari.polisirreducible(q):
            continue
        r = roots(q)
        vals = []
        for p in itertools.permutations(range(5)):
            # Each pentagon and its complementary pentagram give the same value; keep the
            # one through the edge {0, 1}.
            if p[0] != 0 or p[1] != 1:
                continue
            s = sum(r[p[i]] * r[p[(i + 1) % 5]] for i in range(5)) - sum(r[p[i]] * r[p[(i + 2) % 5]] for i in range(5))
            vals.append(s * s)
        f = from_roots(vals)
        if f is not None:
            out.append(f)
    return out


def quartic_slice(xmax):
    """Totally imaginary quartic fields with |disc| <= xmax found in a coefficient box
    well beyond the Hunter bound at this size. Not a certified complete enumeration."""
    found = {}
    for a1, a2, a3, a4 in itertools.product(range(0, 3), range(-12, 31), range(-40, 41), range(1, 61)):
        f = poly([1, a1, a2, a3, a4])
        if pari.polsturm(f) != 0:
            continue
        pd = abs(int(pari.poldisc(f)))
        if pd == 0:
            continue
        if not pari.polisirreducible(f):
            continue
        d = abs(int(pari.nfdisc(f)))
        if d > xmax:
            continue
        key = str(pari.polredabs(f))
        found.setdefault(key, f)
    return list(found.values())


def write(path, records):
    records.sort(key=lambda r: (r["degree"], r["disc_abs"], r["label"]))
    with open(path, "w") as fh:
        fh.write('{"data": [\n')
        fh.write(",\n".join(json.dumps(r, separators=(",", ":")) for r in records))
        fh.write("\n]}\n")
    print(path, len(records), file=sys.stderr)


def main():
    named_records = named()
    write(OUT / "named.json", named_records)
    skip = {tuple(r["coeffs"]) for r in named_records}

    pool = sextic_search() + built_sextics() + constructed()
    uniq = {}
    for f in pool:
        h = pari.polredabs(f)
        if tuple(ascending(h)) not in skip:
            uniq.setdefault(str(h), h)
    by_label = defaultdict(list)
    for h in uniq.values():
        by_label[int(pari.polgalois(h)[2])].append(h)
    chosen = []
    for k, hs in sorted(by_label.items()):
        # Smallest polynomial discriminants first; nfdisc on all of them is too slow.
        hs.sort(key=lambda h: (abs(int(pari.poldisc(h))), str(h)))
        print("6T%d" % k, len(hs), file=sys.stderr)
        chosen.extend(record(h) for h in hs[:PER_LABEL])
    assign_labels(chosen)
    write(OUT / "sextics.json", chosen)

    quartics = [record(f) for f in quartic_slice(QUARTIC_XMAX)]
    assign_labels(quartics)
    write(OUT / "quartics.json", quartics)


if __name__ == "__main__":
    main()
