from fractions import Fraction

import pytest

from hurwitzmaps.cartanweyl import (
    H8_REFERENCE_BRACKETS,
    REFERENCE_SIGN_MATRICES,
    GeneratorSet,
    GeneratorSpanError,
    canonical_h8,
    commutator_table,
    decompose_adjoint,
    extract_generators,
    generating_matrices,
    hadamard_sylvester,
    hat_signs,
    hatted_h5,
    ladder_relations,
    lie_closure_rank,
    literal_rule_mismatches,
    sigma,
    so5_generators,
)
from hurwitzmaps.hurwitz import build_hurwitz, hurwitz_minor, norm_sq, symbolic_u
from hurwitzmaps.matrix import ExactMatrix


def sig(n, i, j):
    return sigma(n, i, j).matrix


class TestSigma:
    def test_definition(self):
        assert sig(3, 1, 2) == ExactMatrix([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])

    def test_antisymmetric(self):
        S = sig(5, 2, 4)
        assert S.T == -S
        assert sum(x != 0 for _, _, x in S.entries()) == 2

    def test_commutator_up_to_sign(self):
        c = sig(4, 1, 2).commutator(sig(4, 2, 3))
        assert c == sig(4, 1, 3) or c == -sig(4, 1, 3)

    @pytest.mark.parametrize("i,j", [(2, 1), (0, 2), (1, 5), (3, 3)])
    def test_bad_indices(self, i, j):
        with pytest.raises(ValueError):
            sigma(4, i, j)


class TestDecomposition:
    def test_canonical_h8_u2_bracket(self):
        gm = decompose_adjoint(canonical_h8(symbolic_u(8)))
        assert gm.brackets[2] == ((-1, 1, 2), (1, 3, 4), (1, 5, 6), (-1, 7, 8))

    def test_all_reference_brackets(self):
        gm = decompose_adjoint(canonical_h8(symbolic_u(8)))
        assert gm.identity_part == (1,) * 8
        for k, expected in H8_REFERENCE_BRACKETS.items():
            if k > 1:
                assert set(gm.brackets[k]) == {(Fraction(s), i, j) for s, i, j in expected}

    def test_rebuild_equals_input(self):
        u = symbolic_u(8)
        H = canonical_h8(u)
        assert decompose_adjoint(H).matrix(u) == H

    def test_canonical_h8_is_orthogonal(self):
        u = symbolic_u(8)
        H = canonical_h8(u)
        assert (H @ H.T).is_scalar_multiple_of_identity(norm_sq(u))

    def test_h2(self):
        gm = decompose_adjoint(build_hurwitz(2, symbolic_u(2)))
        assert gm.brackets == {2: ((1, 1, 2),)}
        assert gm.identity_part == (1, 1)

    @pytest.mark.parametrize("n", [4, 8])
    def test_rebuild_hurwitz(self, n):
        u = symbolic_u(n)
        H = build_hurwitz(n, u)
        assert decompose_adjoint(H).matrix(u) == H

    def test_nonlinear_rejected(self):
        u = symbolic_u(2)
        with pytest.raises(ValueError):
            decompose_adjoint(ExactMatrix([[u[0] * u[0], u[1]], [-u[1], u[0]]]))

    def test_non_diagonal_u1_rejected(self):
        u = symbolic_u(2)
        with pytest.raises(ValueError):
            decompose_adjoint(ExactMatrix([[u[0], u[0]], [-u[1], u[0]]]))


class TestHadamard:
    def test_order_one(self):
        assert hadamard_sylvester(1) == ExactMatrix([[1, 1], [1, -1]])

    def test_tensor_square(self):
        H1 = [[1, 1], [1, -1]]
        kron = [[H1[i // 2][j // 2] * H1[i % 2][j % 2] for j in range(4)] for i in range(4)]
        assert hadamard_sylvester(2) == ExactMatrix(kron)

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_orthogonal(self, m):
        H = hadamard_sylvester(m)
        assert (H @ H.T).is_scalar_multiple_of_identity(2 ** m)

    @pytest.mark.parametrize("m", [0, 5])
    def test_range(self, m):
        with pytest.raises(ValueError):
            hadamard_sylvester(m)

    def test_reference_sign_matrices(self):
        for M in REFERENCE_SIGN_MATRICES:
            E = ExactMatrix(M)
            assert (E @ E.T).is_scalar_multiple_of_identity(4)


class TestGeneratingMatrices:
    @pytest.mark.parametrize("n,count", [(4, 2), (8, 4), (16, 8)])
    def test_counts_and_rank(self, n, count):
        mats = generating_matrices(n)
        assert len(mats) == count
        g = extract_generators(mats)
        assert len(g) == g.rank() == n * (n - 1) // 2

    def test_first_n8_matrix_is_canonical(self):
        u = symbolic_u(8)
        assert generating_matrices(8)[0].matrix(u) == canonical_h8(u)

    @pytest.mark.parametrize("n", [4, 8, 16])
    def test_canonical_identity_part(self, n):
        assert generating_matrices(n)[0].identity_part == (1,) * n

    def test_n4_pair_commutes(self):
        S, T = generating_matrices(4)
        for _, A in S.skew_coefficients():
            for _, B in T.skew_coefficients():
                assert A.commutator(B).is_zero()

    def test_cyclic_shift_rotates_sign_rows(self):
        mats = generating_matrices(8)
        # u_2 takes the sign row of u_3 after one shift
        assert mats[1].sign_row(2) == REFERENCE_SIGN_MATRICES[0][2]
        assert mats[1].sign_row(6) == REFERENCE_SIGN_MATRICES[1][2]

    def test_unsupported(self):
        with pytest.raises(ValueError):
            generating_matrices(6)

    def test_span_error_reports_rank(self):
        err = GeneratorSpanError(8, 21)
        assert err.achieved == 21 and "21" in str(err)

    @pytest.mark.parametrize("n", [4, 8])
    def test_closure(self, n):
        assert lie_closure_rank(extract_generators(generating_matrices(n))) == n * (n - 1) // 2


class TestClosure:
    def test_single(self):
        assert lie_closure_rank(GeneratorSet(3, ("a",), (sig(3, 1, 2),))) == 1

    def test_so3(self):
        assert lie_closure_rank(GeneratorSet(3, ("a", "b"), (sig(3, 1, 2), sig(3, 2, 3)))) == 3

    def test_commuting_pair_stays_small(self):
        assert lie_closure_rank(GeneratorSet(4, ("a", "b"), (sig(4, 1, 2), sig(4, 3, 4)))) == 2

    def test_each_n4_matrix_is_one_spin(self):
        assert [lie_closure_rank(extract_generators([gm])) for gm in generating_matrices(4)] == [3, 3]

    def test_canonical_n8_alone_closes_on_so8(self):
        # seven anticommuting J_k plus the 21 products J_i J_j
        assert lie_closure_rank(extract_generators(generating_matrices(8)[:1])) == 28

    def test_empty(self):
        with pytest.raises(ValueError):
            lie_closure_rank(GeneratorSet(3, (), ()))


class TestCommutatorTable:
    def test_full_sigma_basis_closes(self):
        labels, mats = zip(*[(f"S{i}{j}", sig(4, i, j)) for i in range(1, 5) for j in range(i + 1, 5)])
        table = commutator_table(GeneratorSet(4, labels, mats))
        assert all(e.closed for e in table.values())

    def test_truncated_set_leaves_residual(self):
        g = GeneratorSet(3, ("a", "b"), (sig(3, 1, 2), sig(3, 2, 3)))
        entry = commutator_table(g)[("a", "b")]
        assert not entry.closed
        assert entry.residual == sig(3, 1, 3) or entry.residual == -sig(3, 1, 3)
        assert "residual" in entry.to_json_obj()

    def test_non_antisymmetric_rejected(self):
        with pytest.raises(ValueError):
            GeneratorSet(2, ("a",), (ExactMatrix.identity(2),))


class TestSO5:
    def test_commuting_spins(self):
        g = so5_generators()
        for a in "123":
            for b in "123":
                assert g[f"S{a}"].commutator(g[f"T{b}"]).is_zero()

    def test_spin_algebras(self):
        table = commutator_table(so5_generators())
        for X in "ST":
            for a, b, c in (("1", "2", "3"), ("2", "3", "1")):
                coeffs = table[(X + a, X + b)].coefficients
                assert set(coeffs) == {X + c}

    def test_table_closes(self):
        table = commutator_table(so5_generators())
        assert len(table) == 45
        assert all(e.closed for e in table.values())

    def test_hatted_reconstruction(self):
        u = symbolic_u(8)
        assert hatted_h5(u, "S") == hurwitz_minor(5, u)

    def test_hat_signs(self):
        hs = hat_signs()
        assert hs["S2"] == -1
        assert all(hs[k] == 1 for k in ("S1", "S3", "U1", "U2", "V1", "V2"))

    def test_t_family_matrix(self):
        u = symbolic_u(8)
        H = hatted_h5(u, "T")
        assert (H - ExactMatrix.identity(5, u[0])).is_antisymmetric()
        assert H != hurwitz_minor(5, u)

    def test_ladder_relations(self):
        rel = {(r["cartan"], r["ladder"]): r for r in ladder_relations()}
        assert rel[("S3", "U+")]["eigenvalue"] == "0+1i"
        assert rel[("S3", "U-")]["holds"]
        assert rel[("S3", "V+ (L35 + i L45)")]["holds"]
        assert not rel[("S3", "V+ (L25 + i L45)")]["holds"]

    def test_literal_rule_report(self):
        rep = literal_rule_mismatches()
        assert rep["corrected_rule_holds"]
        assert rep["mismatches"]
        assert rep["pairs_checked"] == 400

    def test_json_round_trip(self):
        g = so5_generators()
        obj = g.to_json_obj(commutator_table(g))
        back = GeneratorSet.from_json_obj(obj)
        assert back == g
        assert len(obj["structure_constants"]) == 45
