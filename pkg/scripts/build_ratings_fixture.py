"""Build a per-joke ratings file whose aggregates print exactly like the
published schema, template and phrase tables, with pair counts exact and pair
means as close as the other tables allow.

Each joke's mean is a multiple of 1/6: two judges give halves, three give
thirds.  A mixed-integer program chooses, for every (schema, template,
phrase) group, how many jokes it holds, how many of them had three judges,
and their summed score in sixths, so that every printed mean lands in its
rounding window.  Jokes are then split out deterministically.

    python3 scripts/build_ratings_fixture.py > tests/fixtures/ratings.txt

Needs scipy (HiGHS).  Not a runtime dependency of the package.
"""

from __future__ import annotations

import math
import sys
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from published_tables import PAIR_ROWS, PHRASE_ROWS, SCHEMA_ROWS, TEMPLATE_ROWS, TOTAL  # noqa: E402

SIXTHS = 6
MAX_SIXTHS = 5 * SIXTHS


def window(n: int, printed: str) -> tuple[int, int]:
    """Inclusive bounds on a group's score total (in sixths) for its mean to
    print as ``printed`` under half-up rounding at one decimal."""
    m = Fraction(Decimal(printed))
    lo = n * SIXTHS * (m - Fraction(1, 20))
    hi = n * SIXTHS * (m + Fraction(1, 20))
    return math.ceil(lo), (math.ceil(hi) - 1)


def build():
    cells = [(key, n) for key, n, _ in PAIR_ROWS if n > 0]
    phrases = [p for p, _, _ in PHRASE_ROWS]
    groups = [(c, p) for c, _ in cells for p in phrases]
    G = len(groups)
    # per group: x count, k three-judge jokes, h halves (two-judge), t thirds (three-judge);
    # then two slack variables per pair cell
    C = len(cells)
    nvar = 4 * G + 2 * C
    UP, DN = (lambda i: 4 * G + i), (lambda i: 4 * G + C + i)
    X, K, H, T = (lambda g: g), (lambda g: G + g), (lambda g: 2 * G + g), (lambda g: 3 * G + g)

    rows, lo, hi = [], [], []

    def add(coefs: dict, a: float, b: float):
        row = np.zeros(nvar)
        for i, v in coefs.items():
            row[i] += v
        rows.append(row)
        lo.append(a)
        hi.append(b)

    def total_sixths(pred) -> dict:
        coefs = {}
        for g, (c, p) in enumerate(groups):
            if pred(c, p):
                coefs[H(g)] = 3
                coefs[T(g)] = 2
        return coefs

    def count(pred) -> dict:
        return {X(g): 1 for g, (c, p) in enumerate(groups) if pred(c, p)}

    for g in range(G):
        add({K(g): 1, X(g): -1}, -np.inf, 0)                      # k <= x
        add({H(g): 1, X(g): -10, K(g): 10}, -np.inf, 0)           # h <= 10 (x - k)
        add({T(g): 1, K(g): -15}, -np.inf, 0)                     # t <= 15 k

    for key, n in cells:
        add(count(lambda c, p: c == key), n, n)
    pair_means = {key: m for key, n, m in PAIR_ROWS if n > 0}
    # The printed pair means cannot all hold together with the schema and
    # template means, so their windows are soft.
    for i, (key, n) in enumerate(cells):
        a, b = window(n, pair_means[key])
        add({**total_sixths(lambda c, p: c == key), UP(i): -1}, -np.inf, b)
        add({**total_sixths(lambda c, p: c == key), DN(i): 1}, a, np.inf)
    for name, n, m in PHRASE_ROWS:
        add(count(lambda c, p: p == name), n, n)
        a, b = window(n, m)
        add(total_sixths(lambda c, p: p == name), a, b)
    for name, n, m in SCHEMA_ROWS:
        if n:
            a, b = window(n, m)
            add(total_sixths(lambda c, p: c[0] == name), a, b)
    for name, n, m in TEMPLATE_ROWS:
        a, b = window(n, m)
        add(total_sixths(lambda c, p: c[1] == name), a, b)
    a, b = window(*TOTAL)
    add(total_sixths(lambda c, p: True), a, b)

    # stay near the pair means first, then prefer two judges per joke
    cost = np.zeros(nvar)
    for i in range(C):
        cost[UP(i)] = cost[DN(i)] = 100
    for g in range(G):
        cost[K(g)] = 10
        cost[X(g)] = 0.01
    upper = np.array([max(n for _, n in cells)] * G + [40] * G + [400] * G + [600] * G + [60] * 2 * C, dtype=float)
    integrality = np.array([1] * 4 * G + [0] * 2 * C)
    res = milp(cost, constraints=LinearConstraint(np.array(rows), lo, hi),
               integrality=integrality, bounds=Bounds(np.zeros(nvar), upper),
               options={"time_limit": 300})
    if res.x is None:
        raise SystemExit(f"no fixture satisfies the tables: {res.message}")
    v = np.round(res.x).astype(int)
    return [(groups[g], v[X(g)], v[K(g)], v[H(g)], v[T(g)]) for g in range(G) if v[X(g)]]


def spread(total: int, parts: int, cap: int) -> list[int]:
    base, extra = divmod(total, parts)
    out = [base + (1 if i < extra else 0) for i in range(parts)]
    assert all(0 <= x <= cap for x in out)
    return out


def judges(units: int, n: int) -> list[int]:
    """``n`` integer scores with sum ``units``, as even as possible."""
    return sorted(spread(units, n, 5), reverse=True)


def main() -> None:
    lines = ["# Reconstructed per-joke ratings.  Schema, template and phrase tables and all pair",
             "# counts print exactly; five pair means cannot (the published tables disagree).",
             "# woolly + class_has has count 2 (printed blank); reconstructed.",
             "# <joke_id> <schema> <template> <phrase> <score>,<score>[,<score>]"]
    jid = 0
    for ((schema, template), phrase), x, k, h, t in build():
        two, three = x - k, k
        per_joke = []
        if two:
            per_joke += [judges(u, 2) for u in spread(h, two, 10)]
        if three:
            per_joke += [judges(u, 3) for u in spread(t, three, 15)]
        for scores in per_joke:
            jid += 1
            lines.append(f"j{jid:03d} {schema} {template} {phrase} {','.join(map(str, scores))}")
    print("\n".join(lines))


if __name__ == "__main__":
    main()
