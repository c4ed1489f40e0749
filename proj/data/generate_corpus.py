#!/usr/bin/env python3
"""Writes the SSET/1 corpus of ordered simplicial complexes into data/corpus."""

import itertools
import pathlib

RP2 = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
       (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5)]


def closure(facets):
    out = set()
    for f in facets:
        f = tuple(sorted(f))
        for r in range(1, len(f) + 1):
            out.update(itertools.combinations(f, r))
    return out


def name(simplex):
    return "v" + ".".join(str(v) for v in simplex)


def sset_text(facets, comment):
    simplices = closure(facets)
    top = max(len(s) for s in simplices) - 1
    lines = ["SSET/1", f"# {comment}", f"top_degree {top}"]
    by_degree = [sorted(s for s in simplices if len(s) == n + 1) for n in range(top + 1)]
    for n, gens in enumerate(by_degree):
        lines.append(f"gens {n}: " + " ".join(name(s) for s in gens))
    for n in range(1, top + 1):
        for s in by_degree[n]:
            for i in range(n + 1):
                lines.append(f"d {i} {name(s)} = {name(s[:i] + s[i + 1:])}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def main():
    out = pathlib.Path(__file__).resolve().parent / "corpus"
    out.mkdir(exist_ok=True)
    suspension = [f + (6,) for f in RP2] + [f + (7,) for f in RP2]
    files = {
        "delta2.sset": ([(0, 1, 2)], "standard 2-simplex"),
        "delta3.sset": ([(0, 1, 2, 3)], "standard 3-simplex"),
        "boundary_delta3.sset": (list(itertools.combinations(range(4), 3)), "boundary of the 3-simplex, a 2-sphere"),
        "rp2.sset": (RP2, "6-vertex projective plane; not simply connected"),
        "sigma_rp2.sset": (suspension, "suspension of the 6-vertex projective plane; cone points 6 and 7"),
    }
    for filename, (facets, comment) in files.items():
        (out / filename).write_text(sset_text(facets, comment))


if __name__ == "__main__":
    main()
