import pytest

from wordcomplex.complexes import build
from wordcomplex.homology import reduced_homology
from wordcomplex.morse import (
    EMPTY,
    alt_partner,
    alt_word,
    alternating_collapse,
    alternating_matching,
    full_matching,
    matching_report,
    mu,
    reduce_step,
    reduce_to_core,
    skeleton_for_matching,
    validate_collapsing_order,
)
from wordcomplex.words import (
    classify,
    distinct_subwords,
    enumerate_canonical_words,
    format_word,
    fundamental_subword,
    height,
    left_shifted,
    parse_word,
    reduced_form,
)

from conftest import incidence_by_signs


def w(text):
    return parse_word(text)


def eligible_words(max_len):
    """Words whose run exponents are all even except possibly the last."""
    for word in enumerate_canonical_words(max_len, max_len):
        exponents = reduced_form(word).exponents
        if all(e % 2 == 0 for e in exponents[:-1]):
            yield word


# -- the pairing map -----------------------------------------------------------


def test_mu_worked_example():
    rf = reduced_form(w("aabba"))
    assert mu(rf, 3, (2, 1, 1)) == (2, 0, 1)  # flips the b-run exponent
    assert mu(rf, 3, (2, 0, 1)) == (2, 1, 1)


def test_mu_on_single_run():
    rf = reduced_form(w("aaa"))
    assert mu(rf, 1, (3,)) == (2,)
    assert mu(rf, 1, (0,)) == (1,)


def test_mu_rejects_unmatched_top():
    rf = reduced_form(w("aabb"))
    with pytest.raises(ValueError):
        mu(rf, 2, (2, 2))


def test_mu_rejects_non_left_shifted():
    rf = reduced_form(w("aba"))
    with pytest.raises(ValueError):
        mu(rf, 3, (0, 0, 1))  # names the same vertex as (1, 0, 0)


def test_mu_involution_and_height_preservation():
    for word in eligible_words(7):
        rf = reduced_form(word)
        t = len(rf)
        alpha = rf.exponents
        tuples = [(0,) * t] + [left_shifted(rf, v) for v in distinct_subwords(word)]
        sigma0 = sigma1 = 0
        for beta in tuples:
            if beta == alpha and alpha[-1] % 2 == 0:
                continue  # the unmatched top
            h = height(beta, rf, t)
            image = mu(rf, t, beta)
            assert mu(rf, t, image) == beta
            assert height(image, rf, t) == h
            assert abs(sum(image) - sum(beta)) == 1
            if beta[h - 1] % 2 == 0:
                sigma0 += 1
            else:
                sigma1 += 1
        assert sigma0 == sigma1  # the pairing is a bijection between the halves


# -- full matchings --------------------------------------------------------------


def test_full_matching_single_odd_run_is_perfect():
    m = full_matching(w("aaa"))
    assert m.critical == ()
    assert set(m.pairs) == {(EMPTY, w("a")), (w("aa"), w("aaa"))}


def test_full_matching_even_last_run_leaves_top():
    m = full_matching(w("aabb"))
    assert m.critical == (w("aabb"),)
    assert (EMPTY, w("a")) in m.pairs


def test_full_matching_requires_even_prefix():
    with pytest.raises(ValueError):
        full_matching(w("abb"))


def test_full_matching_pairs_have_unit_incidence():
    for word in eligible_words(7):
        X = build(word)
        m = full_matching(word)
        for s, t in m.pairs:
            if s == EMPTY:
                assert len(t) == 1
                continue
            inc = incidence_by_signs(X, X.id_of_label[s], X.id_of_label[t])
            assert abs(inc) == 1, (word, s, t)


def test_full_matching_report_and_order():
    for word in eligible_words(7):
        X = build(word)
        m = full_matching(word)
        report = matching_report(X, m)
        assert all(report.values()), (word, report)
        skeleton = skeleton_for_matching(X, m)
        assert validate_collapsing_order(skeleton, m.ordered_pairs()).valid, word


def test_critical_count_matches_total_reduced_betti():
    for word in eligible_words(6):
        m = full_matching(word)
        profile = reduced_homology(build(word))
        assert len(m.critical) == profile.total_betti, word


def test_naive_locality_fails_but_repaired_locality_holds():
    # In a^2 b^2 a the upper cell aba covers the lower cell aa without being
    # its partner: the literal "covers are partners or lower cells" claim is
    # false, and only the order-aware version holds.
    word = w("aabba")
    X = build(word)
    m = full_matching(word)
    lower = {s for s, _ in m.pairs}
    aa, aba, aab = w("aa"), w("aba"), w("aab")
    assert (aa, aab) in m.pairs
    covers = {
        X.labels[c]
        for c, _ in X.coface_slots()[X.id_of_label[aa]]
    }
    assert aba in covers and aba not in lower
    assert matching_report(X, m)["locality"]


# -- collapsing order validation ---------------------------------------------------


def test_validate_empty_order():
    assert validate_collapsing_order(build(w("aba")), ()).valid


def test_validate_rejects_foreign_cells():
    with pytest.raises(ValueError):
        validate_collapsing_order(build(w("aa")), ((w("b"), w("ab")),))


def test_dimension_increasing_order_is_invalid():
    m = full_matching(w("aaa"))
    X = build(w("aaa"))
    backwards = tuple(reversed(m.ordered_pairs()))
    report = validate_collapsing_order(X, backwards)
    assert not report.valid
    assert not report.checks[0].upward_closed


def test_order_conditions_reported_per_pair():
    m = full_matching(w("aaaa"))
    X = build(w("aaaa"))
    skeleton = skeleton_for_matching(X, m)
    report = validate_collapsing_order(skeleton, m.ordered_pairs())
    assert report.valid
    assert all(c.dims_ok and c.incidence_ok and c.upward_closed for c in report.checks)
    assert report.checks[-1].sigma == EMPTY  # the augmentation pair goes last


# -- word reduction -----------------------------------------------------------------


def test_reduce_step_examples():
    new, matching = reduce_step(w("abaa"))
    assert new == w("aaa") and matching.t == 1

    new, matching = reduce_step(w("aaba"))
    assert new == w("aab") and matching.t == 2

    with pytest.raises(ValueError):
        reduce_step(w("aabb"))
    with pytest.raises(ValueError):
        reduce_step(w("aaa"))


def test_reduce_step_cell_accounting():
    for word in enumerate_canonical_words(7, 7):
        try:
            new, matching = reduce_step(word)
        except ValueError:
            continue
        removed = len(distinct_subwords(word)) - len(distinct_subwords(new))
        assert removed == 2 * len(matching.pairs), word


def test_reduce_to_core_spherical():
    trace = reduce_to_core(w("ababab"))
    assert trace.terminal == w("aabb") == fundamental_subword(w("ababab"))
    assert [s.kind for s in trace.steps] == ["delete", "delete"]


def test_reduce_to_core_stuck_core():
    trace = reduce_to_core(w("aaa"))
    assert trace.terminal == w("a")
    assert [s.kind for s in trace.steps] == ["contract"]

    trace = reduce_to_core(w("abaa"))
    assert trace.terminal == w("a")
    assert [s.kind for s in trace.steps] == ["delete", "contract"]


def test_reduce_to_core_uses_flips():
    trace = reduce_to_core(w("aab"))
    assert len(trace.terminal) == 1
    assert any(s.kind == "flip" for s in trace.steps)


def test_reduce_to_core_already_terminal():
    assert reduce_to_core(w("aabb")).steps == ()
    assert reduce_to_core(w("a")).steps == ()


def test_reduce_to_core_terminal_law():
    for word in enumerate_canonical_words(7, 7):
        trace = reduce_to_core(word)
        if classify(word).is_spherical:
            assert trace.terminal == fundamental_subword(word), word
        else:
            assert len(trace.terminal) == 1, word
        for step in trace.steps:
            if step.kind == "delete":
                assert len(step.after) == len(step.before) - 1
            elif step.kind == "flip":
                assert step.after == step.before[::-1]


# -- alternating words ----------------------------------------------------------------


def test_alt_word():
    assert alt_word(4) == w("abab")
    with pytest.raises(ValueError):
        alt_word(0)


def test_alt_partner_rules():
    assert alt_partner(()) == (w("a"), "R3", True)
    assert alt_partner(w("aa")) == (w("aab"), "R4", True)
    assert alt_partner(w("b")) == (w("ab"), "R1", True)
    assert alt_partner(w("aaa")) == (w("aaba"), "R2", True)
    assert alt_partner(w("aabb")) == (w("aabba"), "R3", True)


def test_alt_partner_is_an_involution():
    for n in range(1, 9):
        for u in distinct_subwords(alt_word(n)) | {()}:
            partner, rule, is_lower = alt_partner(u)
            back, back_rule, back_lower = alt_partner(partner)
            assert back == u and back_rule == rule and back_lower != is_lower


def test_alternating_matching_critical_cells():
    for n in range(1, 13):
        m = alternating_matching(n)
        if n % 3 == 0:
            assert m.critical == (fundamental_subword(alt_word(n)),)
        else:
            assert m.critical == ()


def test_alternating_collapse_runs():
    for n in range(1, 13):
        run = alternating_collapse(n)
        if n % 3 == 0:
            expected = distinct_subwords(fundamental_subword(alt_word(n)))
            assert run.terminal_cells == frozenset(expected)
        else:
            assert run.terminal_cells == frozenset({(0,)})
        removed = len(distinct_subwords(alt_word(n))) - len(run.terminal_cells)
        assert removed == 2 * len(run.steps)


def test_alternating_collapse_step_rules_tagged():
    run = alternating_collapse(6)
    assert {s.rule for s in run.steps} <= {"R1", "R2", "R3", "R4"}
    assert run.core == w("aabb")


def test_trace_json_round_trip():
    trace = reduce_to_core(w("abaa"))
    data = trace.to_json()
    assert data["terminal"] == "a"
    assert data["steps"][0]["kind"] == "delete"
    run = alternating_collapse(3)
    data = run.to_json()
    assert data["core"] == "aa"
    assert sorted(data["terminal_cells"]) == ["a", "aa"]
