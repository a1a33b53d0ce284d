"""Acceptance suite: one test per criterion, each printing a PASS/FAIL
line.  All checks are exact; "pass" means identically-zero residuals.
"""
import json
import random
import time
from itertools import product as iproduct

from antiprelie import (GF, QQ, Algebra, AlgebraPair, BilinearForm, Matrix,
                        brute_force_Z2, check_anti_o,
                        check_comm_2cocycle, check_compatible_associative,
                        check_compatible_lie, check_compatible_pair,
                        check_invariant, check_representation_pair,
                        check_strong, commutator_pair, construct_from_vectors,
                        dual_pair, get_family, induce_from_cocycle,
                        induce_from_invertible, induce_on_domain, instantiate,
                        invariant_form_space, left_multiplication_pair,
                        pairing_form, semidirect_product, verify_catalog,
                        verify_family_membership)
from antiprelie.catalog import cocycle_families_of, _base_for
from antiprelie.cli import main as cli_main
from antiprelie.cocycles import instantiate_family_gf
from conftest import random_instance, record_acceptance

CA_ALL = [f"CA{i}" for i in range(1, 46)]


def announce(num, passed, detail):
    line = record_acceptance(num, passed, detail)
    print(line)
    assert passed, line


def test_criterion_1_catalog_soundness(capsys):
    t0 = time.time()
    code = cli_main(["catalog", "verify", "--scope", "all"])
    out = capsys.readouterr().out
    report = json.loads(out)
    elapsed = time.time() - t0
    ca_items = [it for it in report["items"] if it["scope"] == "CA-families"]
    a_items = [it for it in report["items"] if it["scope"] == "A-families"]
    ok = (code == 0 and report["passed"] and len(ca_items) == 45
          and len(a_items) == 9 and elapsed < 60)
    announce(1, ok,
             f"catalog verify --scope all: 9 A-families + 45 CA-families "
             f"symbolically zero-residual in {elapsed:.1f}s")


def test_criterion_2_lemma_membership():
    t0 = time.time()
    checked = 0
    failures = []
    blocks = [("A2", None), ("A3", None), ("A4", None), ("A5", None),
              ("A6", "0"), ("A6", "-1"), ("A6", "generic"), ("A7", None),
              ("A8", "0"), ("A8", "-2"), ("A8", "generic"), ("A9", None)]
    for name, case in blocks:
        base = _base_for(name, case)
        for idx, fam in enumerate(cocycle_families_of(name, case)):
            rep = verify_family_membership(base, fam)
            checked += 1
            if not rep.passed:
                failures.append(f"{name}/{case}#{idx}")
    elapsed = time.time() - t0
    ok = not failures and checked == 22 and elapsed < 30
    announce(2, ok,
             f"{checked} deformation families verified symbolically "
             f"in {elapsed:.1f}s" +
             (f"; failures: {failures}" if failures else ""))


# (base, lambda) -> (expected |Z2| over GF(5), expected surplus)
ORACLE_BASES = {
    ("A2", None): (245, 0), ("A3", None): (425, 0), ("A4", None): (145, 20),
    ("A5", None): (145, 0), ("A6", -2): (225, 100), ("A6", -1): (145, 120),
    ("A6", 0): (245, 0), ("A6", 1): (125, 0), ("A7", None): (125, 0),
    ("A8", -2): (145, 120), ("A8", 0): (245, 0), ("A8", 1): (125, 0),
    ("A9", None): (125, 0),
}


def _case_for(name, lam):
    if name == "A6":
        return {0: "0", -1: "-1"}.get(lam, "generic")
    if name == "A8":
        return {0: "0", -2: "-2"}.get(lam, "generic")
    return None


def test_criterion_3_oracle_containment():
    t0 = time.time()
    findings = []
    ok = True
    union_counts = {}
    for (name, lam), (want_total, want_surplus) in sorted(
            ORACLE_BASES.items(), key=str):
        assignment = {"lambda": lam} if lam is not None else {}
        base = instantiate(get_family(name), assignment, prime=5).circ
        sols = {tuple(int(x.value) for x in d.flat())
                for d in brute_force_Z2(base)}
        union = set()
        for fam in cocycle_families_of(name, _case_for(name, lam)):
            members = instantiate_family_gf(fam, 5)
            if not members <= sols:
                ok = False
                findings.append(f"{name}@{lam}: containment FAILED")
            union |= members
        union_counts[(name, lam)] = len(union)
        surplus = sols - union
        if len(sols) != want_total or len(surplus) != want_surplus:
            ok = False
            findings.append(f"{name}@{lam}: counts {len(sols)}/{len(surplus)}"
                            f" vs expected {want_total}/{want_surplus}")
        if surplus:
            findings.append(f"{name}@{lam}: {len(surplus)} surplus "
                            f"solutions beyond the tabulated families")
    # pinned inclusion-exclusion cardinalities
    if union_counts[("A2", None)] != 245:
        ok = False
        findings.append("A2 family union != 245")
    if union_counts[("A9", None)] != 125:
        ok = False
        findings.append("A9 family union != 125")
    elapsed = time.time() - t0
    ok = ok and elapsed < 300
    announce(3, ok,
             f"13 bases x 5^8 candidates in {elapsed:.1f}s; A2 union 245, "
             f"A9 union 125; findings: {findings if findings else 'none'}")


def test_criterion_4_automorphisms_and_laws():
    t0 = time.time()
    auto = verify_catalog("automorphisms")
    laws = verify_catalog("transformations")
    # the two explicitly quoted laws are part of the verified data
    data_ok = True
    a2_first = cocycle_families_of("A2")[0]
    a9 = cocycle_families_of("A9")[0]
    from antiprelie.catalog import load_catalog
    raw = load_catalog()["cocycle_families"]
    a2_law = raw["A2"][""][0]["transformation"]["map"]
    a9_law = raw["A9"][""][0]["transformation"]["map"]
    data_ok &= a2_law["beta"] == "beta*a^-1" and a2_law["gamma"] == "a*gamma"
    data_ok &= a9_law["gamma"] == "gamma+3*a*alpha-a*beta"
    elapsed = time.time() - t0
    ok = auto.passed and laws.passed and data_ok
    announce(4, ok,
             f"9 automorphism families intertwine symbolically; "
             f"{len(laws.items)} transformation laws verified "
             f"(incl. quoted A2 and A9 laws) in {elapsed:.1f}s")


def test_criterion_5_subadjacent_structures():
    rng = random.Random(51)
    t0 = time.time()
    bad = []
    for name in CA_ALL:
        for _ in range(5):
            pair = random_instance(name, rng)
            if not check_compatible_lie(commutator_pair(pair)).passed:
                bad.append(f"{name}: commutator pair")
            if not check_representation_pair(
                    left_multiplication_pair(pair)).passed:
                bad.append(f"{name}: left multiplication pair")
    elapsed = time.time() - t0
    announce(5, not bad,
             f"45 families x 5 points: commutator pairs compatible-Lie, "
             f"left-multiplication pairs valid in {elapsed:.1f}s" +
             (f"; failures {bad[:3]}" if bad else ""))


def _fixed_bases_gf5():
    specs = [("CA30", {"beta": 1, "gamma": 2}, None),
             ("CA35", {"lambda": 1, "alpha": 2, "beta": 1}, 1),
             ("CA38", {"lambda": 1, "alpha": 1, "beta": 2}, 1)]
    out = []
    for name, params, branch in specs:
        pair = instantiate(get_family(name), params, branch=branch, prime=5)
        out.append((name, left_multiplication_pair(pair)))
    return out


def test_criterion_6_operator_equivalences():
    t0 = time.time()
    f = GF(5)
    stats = []
    ok = True
    for name, R in _fixed_bases_gf5():
        anti_o = invertible = strong_n = 0
        for entries in iproduct(range(5), repeat=4):
            T = Matrix.from_rows(f, [[entries[0], entries[1]],
                                     [entries[2], entries[3]]])
            if not check_anti_o(T, R).passed:
                continue
            anti_o += 1
            strong = check_strong(T, R).passed
            strong_n += strong
            compat = check_compatible_pair(induce_on_domain(T, R)).passed
            if strong != compat:
                ok = False                      # (b) fails
            if not T.det().is_zero():
                invertible += 1
                if not strong:
                    ok = False                  # (a) fails
                out = induce_from_invertible(T, R)
                if commutator_pair(out) != R.g:
                    ok = False                  # (c) fails
        stats.append(f"{name}: {anti_o} anti-O ({invertible} invertible, "
                     f"{strong_n} strong)")
        if not (0 < invertible <= strong_n <= anti_o):
            ok = False
    elapsed = time.time() - t0
    announce(6, ok,
             f"3 bases x 625 maps: invertible=>strong, strong<=>compatible, "
             f"commutator recovery; {'; '.join(stats)} in {elapsed:.1f}s")


def test_criterion_7_form_constructions():
    rng = random.Random(72)
    t0 = time.time()
    ok = True
    notes = []
    # (a) round-trip through the induced products wherever a nondegenerate
    # invariant form exists (exact linear solve + small rational search)
    found = 0
    for name in CA_ALL:
        pair = random_instance(name, rng)
        basis = invariant_form_space(pair)
        form = None
        for _ in range(60):
            gram = Matrix.zero(QQ, 2, 2)
            for g in basis:
                gram = gram + g.scale(QQ.scalar(rng.randint(-3, 3)))
            if not gram.det().is_zero():
                form = BilinearForm(gram)
                break
        if form is None:
            continue
        found += 1
        out = induce_from_cocycle(form, commutator_pair(pair))
        if out.circ.sc != pair.circ.sc or out.star.sc != pair.star.sc:
            ok = False
            notes.append(f"{name}: round-trip mismatch")
    if found < 3:
        ok = False
        notes.append(f"only {found} instances carried nondegenerate forms")
    # (b) the pairing form is a commutative 2-cocycle on the double
    pair_count = 0
    for name in ("CA5", "CA10", "CA17", "CA26", "CA27", "CA30", "CA35",
                 "CA38", "CA41", "CA44"):
        pair = random_instance(name, rng)
        double = semidirect_product(dual_pair(left_multiplication_pair(pair)))
        if not check_comm_2cocycle(pairing_form(2, QQ), double).passed:
            ok = False
            notes.append(f"{name}: pairing form fails on the double")
        pair_count += 1
    # (c) 100 random vector constructions over Q and GF(7)
    built = 0
    for field in (QQ, GF(7)):
        for _ in range(50):
            dim = rng.choice((2, 3))
            if field is QQ:
                entry = lambda: rng.randint(-3, 3)
            else:
                entry = lambda: rng.randrange(7)
            rows = [[0] * dim for _ in range(dim)]
            for i in range(dim):
                for j in range(i, dim):
                    rows[i][j] = rows[j][i] = entry()
            form = BilinearForm(Matrix.from_rows(field, rows))
            s1 = [field.scalar(entry()) for _ in range(dim)]
            s2 = [field.scalar(entry()) for _ in range(dim)]
            out = construct_from_vectors(form, s1, s2)
            if not (check_compatible_pair(out).passed
                    and check_invariant(form, out).passed
                    and check_comm_2cocycle(form,
                                            commutator_pair(out)).passed):
                ok = False
                notes.append("vector construction failed")
            built += 1
    elapsed = time.time() - t0
    ok = ok and pair_count == 10 and built == 100
    announce(7, ok,
             f"(a) {found} nondegenerate-form round-trips, (b) pairing form "
             f"2-cocycle on {pair_count} doubles, (c) {built} vector "
             f"constructions verified in {elapsed:.1f}s" +
             (f"; notes {notes[:3]}" if notes else ""))


def test_criterion_8_commutative_case():
    rng = random.Random(83)
    t0 = time.time()
    f = GF(5)
    agreements = 0
    for _ in range(200):
        def rand_comm():
            entries = []
            for i in range(1, 3):
                for j in range(i, 3):
                    for k in range(1, 3):
                        c = rng.randrange(5)
                        if c:
                            entries.append((i, j, k, c))
                            if i != j:
                                entries.append((j, i, k, c))
            return Algebra.from_entries(f, 2, entries)
        P = AlgebraPair(rand_comm(), rand_comm())
        if check_compatible_pair(P).passed == \
                check_compatible_associative(P).passed:
            agreements += 1
    elapsed = time.time() - t0
    announce(8, agreements == 200,
             f"{agreements}/200 commutative pairs: compatible anti-pre-Lie "
             f"agrees with compatible associative in {elapsed:.1f}s")
