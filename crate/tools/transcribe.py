#!/usr/bin/env python3
"""Expand the hand-transcribed reference tables for cubic surfaces into the
canonical golden text files.

Set notation follows the tables: `x3x0{x0,x1,x2}` is a product of a fixed
monomial and one variable from the set, `{x0,x1}^3` is every degree-3
monomial in the listed variables. Output monomials are in graded lex order
with x0 > x1 > x2 > x3, separated by single spaces.

Usage: transcribe.py OUTPUT_DIR
"""

import itertools
import re
import sys
from fractions import Fraction
from pathlib import Path

N = 3
DEGREE = 3

LAMBDAS = {
    1: (1, 0, 0, -1),
    2: (2, 0, -1, -1),
    3: (5, 1, -3, -3),
    4: (13, 1, -3, -11),
    5: (3, 1, -1, -3),
    6: (9, 1, -3, -7),
    7: (5, 5, -3, -7),
    8: (1, 1, 1, -3),
    9: (5, 1, 1, -7),
    10: (1, 1, -1, -1),
}

# (label, pivot, interval, V set, B set)
MAXIMAL = [
    ("1", 2, "(0,1)", "x3x0{x0,x1,x2}, {x0,x1,x2}^3", "x0,x1,x2"),
    ("2b", 2, "(0,1)", "x3{x0,x1}^2, {x0,x1,x2}^3", "x0,x1,x2"),
    ("2", 1, "(0,1)", "x1^3, x0{x0,x1,x2,x3}^2", "x0,x1"),
    ("3b", 3, "(0,1/5]", "x3{x0,x1}^2, x2^2{x0,x1}, x2{x0,x1}^2, {x0,x1}^3", "x0,x1,x2,x3"),
    ("8b", 3, "(0,1)", "x0{x0,x1,x2,x3}^2", "x0,x1,x2,x3"),
    ("9", 3, "(0,3/7]", "x3x0^2, {x0,x1,x2}^3", "x0,x1,x2,x3"),
    ("3", 0, "[1/5,5/9)", "x0{x0,x1,x2,x3}^2, x1^2{x1,x2,x3}", "x0"),
    ("5", 3, "(1/5,1/3]", "{x0,x1}^3, x2{x0,x1}^2, x0x2^2, x0x3{x0,x1}", "x0,x1,x2,x3"),
    ("7", 3, "(1/5,3/7]", "x3{x0,x1}^2, {x0,x1}^3, x2{x0,x1}^2", "x0,x1,x2,x3"),
    ("5", 0, "[1/3,3/7)",
     "x0^2{x0,x1,x2,x3}, x0{x1,x2}^2, x0x3{x1,x2}, x1^2{x1,x2,x3}, x1x2^2", "x0"),
    ("6", 3, "(1/3,3/7]", "x0x3{x0,x1}, x0x2{x0,x1,x2}, {x0,x1}^3", "x0,x1,x2,x3"),
    ("6b", 0, "[3/7,9/13)", "x0x3{x0,x1,x2}, {x1,x2}^3, x0{x0,x1,x2}^2, x1^2x3", "x0"),
    ("9b", 0, "[3/7,9/13)", "x0{x0,x1,x2,x3}^2, {x1,x2}^3", "x0"),
    ("10", 3, "(3/7,1)", "x3{x0,x1}^2, {x0,x1}^3, x2{x0,x1}^2", "x0,x1,x2,x3"),
    ("8", 3, "(3/7,1)", "{x0,x1,x2}^3", "x0,x1,x2,x3"),
    ("6b", 3, "(3/7,5/9]", "{x0,x1}^3, x2{x0,x1}^2, x0x2^2, x0^2x3", "x0,x1,x2,x3"),
    ("6", 0, "[5/9,9/13)", "x0{x0,x1,x2,x3}^2, x1x2^2, x1^2{x1,x2,x3}", "x0"),
    ("4b", 3, "(5/9,9/13]", "x0^2x3, x0x2{x0,x1,x2}, {x0,x1}^3", "x0,x1,x2,x3"),
    ("4", 0, "[9/13,1)", "x0{x0,x1,x2,x3}^2, x1^2x3, {x1,x2}^3", "x0"),
]

BOUNDARY = [
    ("1", 2, "(0,1)", "x0{x1,x2}x3, {x1,x2}^3", "x1,x2"),
    ("2", 1, "(0,1)", "x1^3, x0{x2,x3}^2", "x1"),
    ("2b", 2, "(0,1)", "x2^3, {x0,x1}^2x3", "x2"),
    ("3", 0, "1/5", "x1^2{x2,x3}, x0{x2,x3}^2", "x0"),
    ("3b", 3, "1/5", "x2^2{x0,x1}, x3{x0,x1}^2", "x3"),
    ("5", 0, "1/3", "x1x2^2, x0x2x3, x1^2x3", "x0"),
    ("5", 3, "1/3", "x1^2x2, x0x1x3, x0x2^2", "x3"),
    ("6b", 0, "3/7", "x1^2x3, x0x2x3, x2^3", "x0"),
    ("9", 3, "3/7", "{x1,x2}^3, x0^2x3", "x3"),
    ("6", 3, "3/7", "x0x2^2, x0x1x3, x1^3", "x3"),
    ("9b", 0, "3/7", "{x1,x2}^3, x0x3^2", "x0"),
    ("6b", 3, "5/9", "x1^2x2, x0x2^2, x0^2x3", "x3"),
    ("6", 0, "5/9", "x1x2^2, x0x3^2, x1^2x3", "x0"),
    ("4", 0, "9/13", "x1^2x3, x0x3^2, x2^3", "x0"),
    ("4b", 3, "9/13", "x1^3, x0x2^2, x0^2x3", "x3"),
]

WALLS = [Fraction(0), Fraction(1, 5), Fraction(1, 3), Fraction(3, 7),
         Fraction(5, 9), Fraction(9, 13), Fraction(1)]

# Weight sums of the quasi-homogeneous weights per singularity type.
SINGULARITY_WEIGHT_SUMS = [
    ("A2", Fraction(1, 2) + Fraction(1, 2) + Fraction(1, 3)),
    ("A3", Fraction(1, 2) + Fraction(1, 2) + Fraction(1, 4)),
    ("A4", Fraction(1, 2) + Fraction(1, 2) + Fraction(1, 5)),
    ("A5", Fraction(1, 2) + Fraction(1, 2) + Fraction(1, 6)),
    ("D4", Fraction(1, 2) + Fraction(1, 3) + Fraction(1, 3)),
    ("D5", Fraction(1, 2) + Fraction(3, 8) + Fraction(1, 4)),
    ("E6", Fraction(1, 2) + Fraction(1, 3) + Fraction(1, 4)),
    ("Ẽ6", Fraction(1, 3) + Fraction(1, 3) + Fraction(1, 3)),
]


def dual(w):
    return tuple(-r for r in reversed(w))


def label_text(key):
    if key.endswith("b"):
        return "λ̄" + key[:-1]
    return "λ" + key


def member_order():
    """λ1, λ̄1, λ2, λ̄2, ... with self-dual entries listed once."""
    keys = []
    for k, w in LAMBDAS.items():
        keys.append(str(k))
        if dual(w) != w:
            keys.append(f"{k}b")
    return keys


def weights_of(key):
    if key.endswith("b"):
        return dual(LAMBDAS[int(key[:-1])])
    return LAMBDAS[int(key)]


TOKEN = re.compile(r"\{([^}]*)\}(?:\^(\d+))?|x(\d)(?:\^(\d+))?")


def expand_term(term):
    """All exponent vectors of a product such as `x3x0{x0,x1,x2}` or `{x0,x1}^2x3`."""
    products = [(0,) * (N + 1)]
    pos = 0
    term = term.replace(" ", "")
    while pos < len(term):
        m = TOKEN.match(term, pos)
        if not m:
            raise ValueError(f"cannot parse {term!r} at {pos}")
        pos = m.end()
        if m.group(1) is not None:
            variables = [int(v.strip()[1:]) for v in m.group(1).split(",")]
            power = int(m.group(2) or 1)
            factors = []
            for combo in itertools.combinations_with_replacement(variables, power):
                e = [0] * (N + 1)
                for v in combo:
                    e[v] += 1
                factors.append(tuple(e))
        else:
            e = [0] * (N + 1)
            e[int(m.group(3))] = int(m.group(4) or 1)
            factors = [tuple(e)]
        products = [tuple(a + b for a, b in zip(p, f)) for p in products for f in factors]
    return set(products)


def split_terms(text):
    terms, depth, cur = [], 0, ""
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch == "," and depth == 0:
            terms.append(cur)
            cur = ""
        else:
            cur += ch
    terms.append(cur)
    return [t.strip() for t in terms if t.strip()]


def expand(text, degree):
    out = set()
    for term in split_terms(text):
        for e in expand_term(term):
            if sum(e) != degree:
                raise ValueError(f"{term!r} has degree {sum(e)}, expected {degree}")
            out.add(e)
    return out


def monomial_text(e):
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i}")
        elif k > 1:
            parts.append(f"x{i}^{k}")
    return "".join(parts)


def canonical(exps):
    # Graded lex with x0 > x1 > ...: larger exponent vectors first.
    return " ".join(monomial_text(e) for e in sorted(exps, reverse=True))


def interval_start(text):
    if text[0] in "([":
        lo = Fraction(text[1:].split(",")[0])
        return (lo, 0 if text[0] == "[" else 1)
    return (Fraction(text), 0)


def rows_text(rows):
    order = {k: i for i, k in enumerate(member_order())}
    lines = []
    for key, pivot, interval, v, b in rows:
        vs = expand(v, DEGREE)
        bs = expand(b, 1)
        lines.append(((order[key], pivot, interval_start(interval)),
                      f"{label_text(key)} | x{pivot} | {interval} | {canonical(vs)} | {canonical(bs)}"))
    lines.sort(key=lambda r: r[0])
    return "".join(line + "\n" for _, line in lines)


def fundamental_set_text():
    lines = []
    for key in member_order():
        w = ",".join(str(r) for r in weights_of(key))
        lines.append(f"{label_text(key)} ({w})\n")
    return "".join(lines)


def wall_map_text():
    return "".join(f"{name} | {4 / w - 3}\n" for name, w in SINGULARITY_WEIGHT_SUMS)


def main():
    out = Path(sys.argv[1])
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "fundamental_set.txt": fundamental_set_text(),
        "walls.txt": "".join(f"{w}\n" for w in WALLS),
        "maximal_sets.txt": rows_text(MAXIMAL),
        "boundary.txt": rows_text(BOUNDARY),
        "wall_map.txt": wall_map_text(),
    }
    for name, text in files.items():
        (out / name).write_text(text, encoding="utf-8")


if __name__ == "__main__":
    main()
