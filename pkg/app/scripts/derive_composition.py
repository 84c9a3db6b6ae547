"""
derive_composition.py: Polish a palindromic composition table with mpmath.

Usage:
    python -m app.scripts.derive_composition <scheme> [dps]

Reads the gamma table of <scheme> from DATA_DIR/schemes, keeps the middle
coefficient tied to sum(gamma) = 1, and runs Newton (mpmath.findroot) on the
order conditions with as many free half-table entries as there are
conditions; the remaining entries stay fixed. Prints the polished table in
the scheme file format together with the final residuals.
"""

import sys

import mpmath as mp

from app.schemas.splitting.scheme_schemas import CompositionScheme
from app.services.splitting.order_condition_service import MAX_CHECKED_ORDER
from app.services.splitting.scheme_registry_service import load_scheme_file

DEFAULT_DPS = 40


def _conditions(g: list) -> list:
    tau, acc = [], mp.mpf(0)
    for x in g:
        tau.append(acc + x / 2 - mp.mpf(1) / 2)
        acc += x
    pairs = list(zip(g, tau))
    return [
        mp.fsum(x**3 for x in g),
        mp.fsum(x**5 for x in g),
        mp.fsum(x**3 * t**2 for x, t in pairs),
        mp.fsum(x**7 for x in g),
        mp.fsum(x**5 * t**2 for x, t in pairs),
        mp.fsum(x**3 * t**4 for x, t in pairs),
        mp.fsum(g[i] ** 3 * g[j] ** 3 * (tau[i] - tau[j]) for i in range(len(g)) for j in range(i + 1, len(g))),
    ]


def _expand(half: list) -> list:
    middle = 1 - 2 * mp.fsum(half)
    return half + [middle] + half[::-1]


def derive_composition():
    if len(sys.argv) < 2:
        print("usage: python -m app.scripts.derive_composition <scheme> [dps]", file=sys.stderr)
        sys.exit(2)
    name = sys.argv[1]
    dps = int(sys.argv[2]) if len(sys.argv) > 2 else DEFAULT_DPS

    scheme = load_scheme_file(name)
    if not isinstance(scheme, CompositionScheme) or scheme.stages % 2 == 0:
        print(f"{name}: only odd-length gamma tables can be polished", file=sys.stderr)
        sys.exit(2)

    n_cond = {4: 1, 6: 3, 8: 7}[min(scheme.order, MAX_CHECKED_ORDER)]
    with mp.workdps(dps):
        half = [mp.mpf(x) for x in scheme.gammas[: scheme.stages // 2]]
        if n_cond > len(half):
            print(f"{name}: {len(half)} free coefficients cannot meet {n_cond} conditions", file=sys.stderr)
            sys.exit(2)
        fixed = half[n_cond:]

        def residuals(*free):
            return _conditions(_expand(list(free) + fixed))[:n_cond]

        free = mp.findroot(residuals, half[:n_cond])
        free = [free] if n_cond == 1 else list(free)
        gammas = _expand(free + fixed)
        worst = max(abs(r) for r in _conditions(gammas)[:n_cond])

        print(f"# name: {name}")
        print(f"# order: {scheme.order}")
        print("# type: gamma")
        print(f"# source: polished with mpmath.findroot at {dps} digits, residual {mp.nstr(worst, 3)}")
        for x in gammas:
            print(mp.nstr(x, 25))


if __name__ == "__main__":
    derive_composition()
