"""Write the bundled example bialgebras (abelian2, borel2, sl2 and their doubles) as JSON."""
import json
from fractions import Fraction
from pathlib import Path

from propquant.evaluate import FiniteLieBialgebra, coboundary, double, validate

OUT = Path(__file__).resolve().parents[1] / "src" / "propquant" / "bialgebras"


def zeros(n):
    return [[[0] * n for _ in range(n)] for _ in range(n)]


def abelian2():
    return FiniteLieBialgebra.from_arrays(["X", "Y"], zeros(2), zeros(2), name="abelian2")


def borel2():
    # [H, E] = E, delta(H) = 0, delta(E) = E (x) H - H (x) E
    H, E = 0, 1
    c, f = zeros(2), zeros(2)
    c[H][E][E], c[E][H][E] = 1, -1
    f[E][E][H], f[E][H][E] = 1, -1
    return FiniteLieBialgebra.from_arrays(["H", "E"], c, f, name="borel2")


def sl2():
    # [h, e] = 2e, [h, f] = -2f, [e, f] = h; r = e (x) f + h (x) h / 4; delta = coboundary of r
    h, e, f = 0, 1, 2
    c = zeros(3)
    c[h][e][e], c[e][h][e] = 2, -2
    c[h][f][f], c[f][h][f] = -2, 2
    c[e][f][h], c[f][e][h] = 1, -1
    r = [[0] * 3 for _ in range(3)]
    r[e][f], r[h][h] = 1, Fraction(1, 4)
    b = FiniteLieBialgebra.from_arrays(["h", "e", "f"], c, zeros(3), r, name="sl2")
    b.f = {i: t for i in range(3) if (t := coboundary(b, b.r_tensor(), i))}
    return b


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for b in (abelian2(), borel2(), sl2()):
        for x in (b, double(b)):
            bad = [k for k, ok in validate(x).items() if not ok]
            assert not bad, (x.name, bad)
            (OUT / f"{x.name}.json").write_text(json.dumps(x.to_json(), indent=1, sort_keys=True) + "\n")
            print("wrote", x.name, x.dim)


if __name__ == "__main__":
    main()
