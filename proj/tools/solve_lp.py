#!/usr/bin/env python3
"""Solve an LP-format MILP file and print `name value` lines.

Usage:
    solve_lp.py [--check-only] model.lp

The parser covers the LP dialect emitted by the export tool (and typical
CPLEX-style files): Maximize/Minimize, Subject To, Bounds, Binaries, End.
With --check-only it parses the file, prints a summary, and exits without
solving. The solved objective is printed as `__objective__ value`.
"""

import re
import sys

TERM_RE = re.compile(r"([+-])?\s*(\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)?\s*([A-Za-z_][A-Za-z0-9_]*)")
NUM_RE = re.compile(r"[+-]?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?")
SECTION_RE = re.compile(
    r"^\s*(maximize|minimize|subject\s+to|st|bounds|binaries|binary|generals|general|end)\s*$",
    re.IGNORECASE,
)


def parse_terms(expr):
    coeffs = {}
    for sign, num, name in TERM_RE.findall(expr):
        c = float(num) if num else 1.0
        if sign == "-":
            c = -c
        coeffs[name] = coeffs.get(name, 0.0) + c
    return coeffs


def parse_lp(text):
    sections = {}
    current = None
    for raw in text.splitlines():
        line = raw.split("\\")[0].rstrip()
        if not line.strip():
            continue
        m = SECTION_RE.match(line)
        if m:
            key = re.sub(r"\s+", " ", m.group(1).lower())
            if key == "st":
                key = "subject to"
            if key in ("binary",):
                key = "binaries"
            if key in ("general",):
                key = "generals"
            current = key
            sections.setdefault(current, [])
            continue
        if current is None:
            raise ValueError("content before first section: %r" % line)
        sections[current].append(line)

    if "end" not in sections:
        raise ValueError("missing End section")
    sense = None
    if "maximize" in sections:
        sense, obj_lines = "max", sections["maximize"]
    elif "minimize" in sections:
        sense, obj_lines = "min", sections["minimize"]
    else:
        raise ValueError("missing objective section")

    obj_text = " ".join(obj_lines)
    if ":" in obj_text:
        obj_text = obj_text.split(":", 1)[1]
    objective = parse_terms(obj_text)

    constraints = []
    buffer = ""
    for line in sections.get("subject to", []):
        buffer += " " + line
        if re.search(r"(<=|>=|=)\s*" + NUM_RE.pattern + r"\s*$", buffer):
            m = re.search(r"(<=|>=|=)\s*(" + NUM_RE.pattern + r")\s*$", buffer)
            rel, rhs = m.group(1), float(m.group(2))
            lhs = buffer[: m.start()]
            name = None
            if ":" in lhs:
                name, lhs = lhs.split(":", 1)
                name = name.strip()
            constraints.append((name, parse_terms(lhs), rel, rhs))
            buffer = ""
    if buffer.strip():
        raise ValueError("trailing constraint text: %r" % buffer.strip())

    bounds = {}
    for line in sections.get("bounds", []):
        t = line.strip()
        m = re.match(
            r"^(" + NUM_RE.pattern + r")\s*<=\s*([A-Za-z_][A-Za-z0-9_]*)\s*<=\s*(" + NUM_RE.pattern + r")$",
            t,
        )
        if m:
            bounds[m.group(2)] = (float(m.group(1)), float(m.group(3)))
            continue
        m = re.match(r"^([A-Za-z_][A-Za-z0-9_]*)\s*>=\s*(" + NUM_RE.pattern + r")$", t)
        if m:
            bounds[m.group(1)] = (float(m.group(2)), float("inf"))
            continue
        m = re.match(r"^([A-Za-z_][A-Za-z0-9_]*)\s*<=\s*(" + NUM_RE.pattern + r")$", t)
        if m:
            bounds[m.group(1)] = (0.0, float(m.group(2)))
            continue
        m = re.match(r"^([A-Za-z_][A-Za-z0-9_]*)\s*free$", t, re.IGNORECASE)
        if m:
            bounds[m.group(1)] = (float("-inf"), float("inf"))
            continue
        raise ValueError("unsupported bounds line: %r" % t)

    binaries = set()
    for line in sections.get("binaries", []):
        binaries.update(line.split())

    names = []
    seen = set()

    def note(name):
        if name not in seen:
            seen.add(name)
            names.append(name)

    for name in objective:
        note(name)
    for _, coeffs, _, _ in constraints:
        for name in coeffs:
            note(name)
    for name in bounds:
        note(name)
    for name in binaries:
        note(name)

    return {
        "sense": sense,
        "objective": objective,
        "constraints": constraints,
        "bounds": bounds,
        "binaries": binaries,
        "names": names,
    }


def solve(model):
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import lil_matrix

    names = model["names"]
    idx = {name: i + 0 for i, name in enumerate(names)}
    nv = len(names)

    c = np.zeros(nv)
    for name, coef in model["objective"].items():
        c[idx[name]] = coef
    if model["sense"] == "max":
        c = -c

    lb = np.zeros(nv)
    ub = np.full(nv, np.inf)
    for name in model["binaries"]:
        ub[idx[name]] = 1.0
    for name, (lo, hi) in model["bounds"].items():
        lb[idx[name]] = lo
        ub[idx[name]] = hi

    integrality = np.zeros(nv)
    for name in model["binaries"]:
        integrality[idx[name]] = 1

    ncons = len(model["constraints"])
    A = lil_matrix((ncons, nv))
    clo = np.full(ncons, -np.inf)
    chi = np.full(ncons, np.inf)
    for row, (_, coeffs, rel, rhs) in enumerate(model["constraints"]):
        for name, coef in coeffs.items():
            A[row, idx[name]] = coef
        if rel in ("<=",):
            chi[row] = rhs
        elif rel in (">=",):
            clo[row] = rhs
        else:
            clo[row] = chi[row] = rhs

    res = milp(
        c=c,
        constraints=LinearConstraint(A.tocsr(), clo, chi),
        integrality=integrality,
        bounds=Bounds(lb, ub),
    )
    if res.status != 0 or res.x is None:
        raise RuntimeError("solver failed: %s" % res.message)
    objective = float(-res.fun if model["sense"] == "max" else res.fun)
    return names, res.x, objective


def main(argv):
    args = [a for a in argv[1:] if a != "--check-only"]
    check_only = "--check-only" in argv[1:]
    if len(args) != 1:
        print("usage: solve_lp.py [--check-only] model.lp", file=sys.stderr)
        return 2
    with open(args[0]) as fh:
        model = parse_lp(fh.read())
    if check_only:
        print("ok %d %d" % (len(model["names"]), len(model["constraints"])))
        return 0
    names, x, objective = solve(model)
    for name, value in zip(names, x):
        print("%s %.17g" % (name, value))
    print("__objective__ %.17g" % objective)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
