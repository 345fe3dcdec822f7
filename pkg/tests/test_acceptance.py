"""Acceptance gate: every criterion runs at its stated tolerance and prints
one PASS/FAIL line (run with -s to see them live).  Tolerances are exact
integer/vector equality throughout; each criterion also enforces its runtime
budget."""

import time
from math import factorial
from pathlib import Path

from repstab.arnold import (
    induced_cyclic_sign_character,
    top_basis,
    top_character,
    trivial_multiplicity,
)
from repstab.characters import (
    count_partition_chains,
    decompose,
    induced_character,
    irreducible_character,
    young_invariants_dim,
)
from repstab.cli import dispatch
from repstab.configspaces import (
    betti_unordered,
    graded_invariants_dim,
    stabilization_onset,
)
from repstab.linalg import add_into
from repstab.manifolds import load_manifold
from repstab.partitions import leadsto, pad, partitions_of
from repstab.specht import (
    monotonicity_witness,
    pi_mu,
    polytabloid,
    verify_claims,
    w_element,
)
from repstab.stability import (
    InducedSpechtSequence,
    check_uniform_stability,
    property_suite,
)
from repstab.tabloids import column_stabilizer_order, parse_tableau, strip

GOLDEN = Path(__file__).parent / "golden"


def _report(number: int, budget: float, started: float, ok: bool):
    elapsed = time.time() - started
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number:2d} {status} ({elapsed:.1f}s, budget {budget:.0f}s)")
    assert ok, f"criterion {number} failed"
    assert elapsed < budget, f"criterion {number} exceeded {budget}s ({elapsed:.1f}s)"


def test_criterion_01_branching_oracle():
    t0 = time.time()
    ok = True
    for k in range(1, 6):
        for lam in partitions_of(k):
            chi = irreducible_character(lam)
            for n in range(k, 9):
                induced = decompose(induced_character(chi, n)).counts
                expected = {mu: 1 for mu in leadsto(lam, n)}
                ok = ok and induced == expected
    _report(1, 60.0, t0, ok)


def test_criterion_02_worked_fixtures():
    t0 = time.time()
    lam = (3, 2, 1)

    def expand(terms):
        out = {}
        for sgn, text in terms:
            add_into(out, polytabloid(parse_tableau(text, 7)), sgn)
        return out

    w1 = w_element(parse_tableau("1,2,3,4;5,6;7", 7), lam)
    w2 = w_element(parse_tableau("1,2,3;4,5,6;7", 7), lam)
    w3 = w_element(parse_tableau("1,2,3;4,5;6,7", 7), lam)
    ok = w1 == expand([(1, "1,2,3;5,6;7")])
    ok = ok and w2 == expand([(1, "1,2,3;4,5;7"), (-1, "1,2,6;4,5;7")])
    ok = ok and w3 == expand(
        [(1, "1,2,3;4,5;6"), (1, "1,7,3;4,2;6"), (1, "1,5,3;4,7;6")]
    )

    t = parse_tableau("7,2,1;5,3;4", 7)
    v = {t.tabloid(): 1}
    displays = {
        (4, 2, 1): "7,2,1,6;5,3;4",
        (3, 3, 1): "7,2,1;5,3,6;4",
        (3, 2, 2): "7,2,1;5,3;4,6",
        (3, 2, 1, 1): "7,2,1;5,3;4;6",
    }
    for mu, expected in displays.items():
        image = pi_mu(v, mu, lam, 7)
        ok = ok and image == {parse_tableau(expected, 7).tabloid(): 1}

    stripped = strip(parse_tableau("1,2,3,4;5,6;7", 7), lam)
    ok = ok and column_stabilizer_order(stripped) == 12
    report = verify_claims(lam, 7)
    by_mu = {e["mu"]: e for e in report.entries}
    ok = ok and by_mu[(4, 2, 1)]["rewrite_constant"] == 12
    _report(2, 1.0, t0, ok)


def test_criterion_03_claims_all_small_shapes():
    t0 = time.time()
    ok = True
    for k in range(0, 4):
        for lam in partitions_of(k):
            for n in range(max(k, 1), 8):
                report = verify_claims(lam, n)
                if not report.ok:
                    ok = False
                    print("claims failure:", lam, n, report.failures)
    _report(3, 300.0, t0, ok)


def test_criterion_04_monotonicity_theorem():
    t0 = time.time()
    ok = True
    for k in range(0, 4):
        for lam in partitions_of(k):
            for n in range(max(k, 1), 7):
                report = monotonicity_witness(lam, n)
                if not report.ok:
                    ok = False
                    print("monotonicity failure:", lam, n, report.failures)
            seq = InducedSpechtSequence(lam)
            start = max(2 * k, 1)
            stab = check_uniform_stability(seq, start, 8)
            if not (stab.ok and stab.multiplicity_stable_from() == start):
                ok = False
                print("stability failure:", lam, stab.witnesses)
    _report(4, 600.0, t0, ok)


def test_criterion_05_torus_betti():
    t0 = time.time()
    torus = load_manifold("torus")
    expected = {
        (2, 2): 1,
        (3, 2): 3, (4, 2): 3, (5, 2): 3, (6, 2): 3,
        (3, 3): 4,
        (4, 3): 5, (5, 3): 5, (6, 3): 5,
        (4, 4): 4,
        (5, 4): 7, (6, 4): 7,
    }
    ok = True
    for (n, i), value in expected.items():
        got = betti_unordered(torus, n, i)
        if got != value:
            ok = False
            print(f"betti mismatch: B_{n}(T^2) i={i}: got {got}, want {value}")
    _report(5, 600.0, t0, ok)


def test_criterion_06_sphere_h1():
    t0 = time.time()
    s2 = load_manifold("s2")
    ok = all(betti_unordered(s2, n, 1) == 0 for n in (2, 3, 4))
    _report(6, 60.0, t0, ok)


def test_criterion_07_odd_dimension_closed_form():
    t0 = time.time()
    s3 = load_manifold("s3")
    P = s3.poincare()
    ok = True
    for n in range(0, 9):
        for i in range(0, 7):
            if betti_unordered(s3, n, i) != graded_invariants_dim(P, n, i):
                ok = False
    for p in range(0, 7):
        onset = stabilization_onset(P, p)
        if onset != p // 3:
            ok = False
        values = {graded_invariants_dim(P, n, p) for n in range(onset, 9)}
        if len(values) != 1:
            ok = False
    _report(7, 60.0, t0, ok)


def test_criterion_08_colored_stability():
    t0 = time.time()
    ok = True
    lams = [lam for k in range(0, 4) for lam in partitions_of(k)]
    mus = [mu for k in range(0, 4) for mu in partitions_of(k)]
    for lam in lams:
        first = lam[0] if lam else 0
        for mu in mus:
            values = {}
            for n in range(max(sum(lam) + first, sum(mu), 1), 9):
                chains = count_partition_chains(lam, mu, n)
                invariants = young_invariants_dim(pad(lam, n), mu)
                if chains != invariants:
                    ok = False
                    print("chain/invariant mismatch:", lam, mu, n, chains, invariants)
                values[n] = chains
            stable_ns = [n for n in values if n >= 2 * sum(mu)]
            if len({values[n] for n in stable_ns}) > 1:
                ok = False
                print("not n-independent past 2|mu|:", lam, mu, values)
    _report(8, 60.0, t0, ok)


def test_criterion_09_range_arithmetic_golden():
    t0 = time.time()
    cases = {
        "ranges_m2_ell0.tsv": ["ranges", "--m", "2", "--ell", "0", "--pages", "4"],
        "ranges_m4_ell0.tsv": ["ranges", "--m", "4", "--ell", "0", "--pages", "4"],
        "ranges_m1_ell1.tsv": ["ranges", "--m", "1", "--ell", "1", "--pages", "4"],
        "ranges_for_torus_i3.tsv": ["ranges-for", "--manifold", "torus", "--i", "3"],
        "ranges_for_s3_i3.tsv": ["ranges-for", "--manifold", "s3", "--i", "3"],
        "branch_321_n7.tsv": ["branch", "--lambda", "3,2,1", "--n", "7"],
    }
    ok = True
    for fname, argv in cases.items():
        code, text = dispatch(argv)
        golden = (GOLDEN / fname).read_text()
        if code != 0 or text + "\n" != golden:
            ok = False
            print("golden mismatch:", fname)
    # the quoted instantiations, read off the golden rows
    ok = ok and (GOLDEN / "ranges_m2_ell0.tsv").read_text().splitlines()[0] == "2\tn >= 2(p+q)\tn >= 2(p+q-1)"
    ok = ok and (GOLDEN / "ranges_m4_ell0.tsv").read_text().splitlines()[0] == "2\tn >= 4(p+q)\tn >= 4(p+q-1)"
    ok = ok and (GOLDEN / "ranges_m1_ell1.tsv").read_text().splitlines()[0] == "2\tn >= p+q+1\tn >= p+q"
    _report(9, 60.0, t0, ok)


def test_criterion_10_property_suite():
    t0 = time.time()
    report = property_suite(n_max=5)
    ok = report.seed_count >= 20 and report.ok
    if not report.ok:
        for failure in report.failures():
            print("property failure:", failure)
    _report(10, 300.0, t0, ok)


def test_criterion_11_arnold_module():
    t0 = time.time()
    ok = True
    for m in range(2, 8):
        if len(top_basis(m)) != factorial(m - 1):
            ok = False
    for m in range(2, 7):
        if top_character(m, 2) != induced_cyclic_sign_character(m):
            ok = False
        if trivial_multiplicity(top_character(m, 3)) != 0:
            ok = False
    _report(11, 60.0, t0, ok)
