#!/usr/bin/env python3
"""Splitting a series into plain coefficients plus an operator's range.

Every f decomposes as  f = e_0 + e_1 x + ... + e_{s-1} x^{s-1} + P(b)
once the top coefficient of P carries a pure power of x.  The sweep works
mod m_B^K in the remaining variables and certifies its own residual.

Run with:  python3 demos/series_splitting.py
"""

from socle.grammar import parse_operator, parse_poly
from socle.seriesdecomp import (
    RegularOperator,
    analyze_operator,
    decompose,
    valuation_growth_probe,
)


def describe(op_text, f_text, n, precision):
    op = RegularOperator.from_weyl(parse_operator(op_text, n))
    f = parse_poly(f_text, n)
    a = analyze_operator(op)
    print(f"P = {op_text},  f = {f_text}")
    print(f"  order r = {op.order}, band offset t = {a.t}, "
          f"indicial polynomial handled up to ell0 = {a.ell0}, plain slots s = {a.s}")
    dec = decompose(f, op, precision=precision)
    for i, series in enumerate(dec.e):
        print(f"  e_{i} = {series.poly_part().render()}")
    for ell in sorted(dec.b):
        print(f"  b_{ell} = {dec.b[ell].poly_part().render()}")
    print(f"  sweep valuation ledger: {list(dec.sweep_valuations)}")
    recon = dec.reconstruction()
    truth = f.x0_slices()
    exact = all(recon.get(j) == truth.get(j) for j in set(recon) | set(truth))
    print(f"  reconstruction through the operator action matches f: {exact}")
    print()


def main():
    print("one variable: the plain derivative just antidifferentiates")
    describe("d0", "1 + x + x^2", 1, precision=4)

    print("one variable: the euler operator keeps the constant term for itself")
    describe("x*d0", "7 + 3*x + 5*x^3", 1, precision=4)

    print("two variables: corrections cascade down, gaining a y each sweep")
    describe("(x + y)*d0", "x^5 + 2*x^3", 2, precision=7)

    print("growth probe: the plain part of x^m sits ever deeper in m_B")
    op = RegularOperator.from_weyl(parse_operator("(x + y)*d0", 2))
    for row in valuation_growth_probe(op, [3, 5, 7], precision=9):
        print(f"  m = {row['m']}:  min e-valuation {row['min_e_valuation']}"
              f"  (guaranteed >= {row['bound']})")


if __name__ == "__main__":
    main()
