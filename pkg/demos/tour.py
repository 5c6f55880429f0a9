"""A short walk through the library on small groups.

Run with ``python3 demos/tour.py``.
"""
from flagcalc.bottsamelson import build_model, stein_face
from flagcalc.charcalc import bwb_cohomology, euler_char_bs, euler_char_x, index_of_contraction
from flagcalc.descent import DescentEngine, certify_word, h1_uniqueness
from flagcalc.dynkin import builtin, classify
from flagcalc.lattice import canonical_class, dominant_representative
from flagcalc.weyl import count_reduced_words, generate_roots, longest_element, weyl_order


def main():
    for t in ("A2", "B2", "G2", "F4"):
        c = builtin(t)
        rs = generate_roots(c)
        w0 = longest_element(c)
        print(f"{t}: {len(rs.positives)} positive roots, |W| = {weyl_order(c)}, "
              f"w0 has length {w0.length} and {count_reduced_words(w0)} reduced words")

    # the canonical class sits in the orbit chamber of length |Phi+|
    f4 = builtin("F4")
    res = dominant_representative(f4, canonical_class(f4))
    print("K_X on F4 lands in a chamber of length", res.length)

    # cohomology of line bundles on the flag manifold of type B2
    b2 = builtin("B2")
    rs = generate_roots(b2)
    for L in [(1, 1), (-1, 0), (-3, 1), (-4, -4)]:
        print(f"B2, degrees {L}: profile {bwb_cohomology(b2, rs, L).to_json()}, chi = {euler_char_x(b2, rs, L)}")

    # the tower of any reduced word for w0 has the same Euler characteristics
    w = longest_element(b2).witness_word
    print("chi on the tower of", [x + 1 for x in w], "=", euler_char_bs(b2, w, (-3, 1)))

    print("F4 index of the contraction at node 1 in degree 15:",
          index_of_contraction(f4, generate_roots(f4), 0, 15))

    # Bott-Samelson numerics
    a2 = builtin("A2")
    m = build_model(a2, (0, 1, 0))
    print("A2 word (1,2,1): gamma curves", m.gamma_in_beta, "contracted positions",
          sorted(k + 1 for k in stein_face(m)))

    # uniqueness certification
    print("B2 (1,2,1,2), h^1(K_1):", h1_uniqueness(b2, (0, 1, 0, 1), target=0))
    b3 = builtin("B3")
    print("B3 (1,2,3)^3:", certify_word(b3, (0, 1, 2) * 3, DescentEngine(b3)))
    print("classify F4:", classify(f4).to_json())


if __name__ == "__main__":
    main()
