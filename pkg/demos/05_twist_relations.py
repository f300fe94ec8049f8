"""Exact matrix layer: braid, chain, forked-chain and square identities."""

from vanishingcycles.spin import MarkedCurve
from vanishingcycles.symp import (
    SpMatrix,
    model_chain,
    model_dn,
    square_transvection_identity,
    verify_braid,
    verify_chain,
    verify_dn,
    word_matrix,
)

a = MarkedCurve((1, 0), 0, 2)
b = MarkedCurve((0, 1), 0, 2)
print(f"braid relation for a once-intersecting pair: {verify_braid(a, b)}")

for n in (2, 3, 5, 8):
    chain, boundary = model_chain(n)
    power = n + 1 if n % 2 else 2 * n + 2
    print(f"chain of length {n}: word^{power} equals the boundary multitwist: "
          f"{verify_chain(chain, boundary)}")

chain2, _ = model_chain(2)
W = word_matrix(chain2)
print(f"explicitly, (M1 M2)^6 = identity: "
      f"{W ** 6 == SpMatrix.identity(2)}")

for n in (3, 6, 9):
    config, boundary = model_dn(n)
    power = 2 * n - 2 if n % 2 else n - 1
    print(f"forked chain on {n} curves: word^{power} equals the boundary "
          f"multitwist: {verify_dn(config, boundary)}")

ok = square_transvection_identity(
    (1, 0, 0, 0, 1, 0),
    (1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, -1), (0, 0, 0, 0, 1, 0))
print(f"square-transvection identity at genus 3: {ok}")
