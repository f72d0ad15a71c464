"""Collapsing matchings on word complexes.

Simplices are named by their exponent tuples over the reduced form: the
lex-maximal (left-shifted) tuple names each distinct subword once, and the
zero tuple names the formal empty cell of the augmented complex. For a
word whose run exponents are even before the last run, the pairing flips
the exponent at the tuple's height (the first run not used in full), and
matches everything except the top simplex when the last exponent is even.
The empty cell pairs with the first vertex, so a perfect matching means
trivial reduced homology.

Word reduction deletes one letter from the run after the first odd
exponent; the deleted simplices are exactly those whose shifted tuple uses
that run in full, matched among themselves by the same flip capped at the
odd run. Iterating, with a reversal when only the last run is odd, drives
every word to its fundamental subword or to a single letter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .complexes import DeltaComplex, build, elementary_collapse, incidence
from .words import (
    ExpPresentation,
    ReducedForm,
    Word,
    distinct_subwords,
    format_word,
    fundamental_subword,
    height,
    is_subword,
    left_shifted,
    p_shifted,
    reduced_form,
    xi,
)

EMPTY: Word = ()


def _word_name(u: Word) -> str:
    return format_word(u) if u else "-"


@dataclass(frozen=True)
class Matching:
    """Dimension-adjacent pairing of simplices, plus unmatched critical ones.

    Pairs are (sigma, tau) subwords with tau one letter longer; sigma may be
    the empty tuple standing for the augmentation cell below every vertex.
    Pairs and critical cells together partition the simplices and the empty
    cell.
    """

    word: Word
    t: int  # run index the pairing flips at (1-based cap)
    pairs: tuple[tuple[Word, Word], ...]
    critical: tuple[Word, ...]
    rules: tuple[str, ...] = field(default=())  # per-pair tags when rule-driven

    def ordered_pairs(self) -> tuple[tuple[Word, Word], ...]:
        """Pairs in removal order: the dimension of sigma never increases.

        Constructors store pairs sorted by descending dimension and then by
        the presentation tuple of sigma; the tie-break matters, since a cell
        covering sigma can be the partner of another same-dimension pair.
        """
        return self.pairs

    def rule_of(self, pair: tuple[Word, Word]) -> str:
        if not self.rules:
            return "mu"
        return dict(zip(self.pairs, self.rules))[pair]

    def to_json(self) -> dict:
        return {
            "word": format_word(self.word),
            "pairs": [
                {
                    "sigma": _word_name(s),
                    "tau": _word_name(t),
                    "dim": len(s) - 1,
                    "rule": self.rule_of((s, t)),
                }
                for s, t in self.ordered_pairs()
            ],
            "critical": [_word_name(c) for c in self.critical],
        }


def _mu_formula(rf: ReducedForm, t: int, beta: ExpPresentation) -> ExpPresentation:
    """Flip the exponent at the height of beta; fill earlier runs in full."""
    alpha = rf.exponents
    h = height(beta, rf, t)
    flipped = xi(beta[h - 1])
    if flipped > alpha[h - 1]:
        raise ValueError("the full tuple is unmatched when the last exponent is even")
    return alpha[: h - 1] + (flipped,) + beta[h:]


def mu(rf: ReducedForm, t: int, beta: ExpPresentation) -> ExpPresentation:
    """The matching involution on left-shifted presentations.

    Requires the first t-1 exponents even and beta left-shifted. The image
    is again left-shifted with the same height; both are re-checked here
    because the pairing silently breaks without them.
    """
    expansion = rf.expand_presentation(beta)
    if beta != left_shifted(rf, expansion):
        raise ValueError("beta must be a left-shifted presentation")
    out = _mu_formula(rf, t, beta)
    if out != left_shifted(rf, rf.expand_presentation(out)):
        raise RuntimeError(f"matching image {out} of {beta} is not left-shifted")
    if height(out, rf, t) != height(beta, rf, t):
        raise RuntimeError(f"matching image {out} of {beta} changed height")
    return out


def full_matching(word: Word) -> Matching:
    """Match every simplex (and the empty cell) of the word's complex.

    Needs all run exponents except possibly the last to be even. When the
    last exponent is odd the matching is perfect; when it is even exactly
    the top simplex is left critical.
    """
    rf = reduced_form(word)
    alpha = rf.exponents
    t = len(rf)
    if any(e % 2 for e in alpha[:-1]):
        raise ValueError("all run exponents before the last must be even")

    presentations: dict[Word, ExpPresentation] = {EMPTY: (0,) * t}
    for u in distinct_subwords(word):
        presentations[u] = left_shifted(rf, u)

    pairs = []
    critical = []
    for u, beta in sorted(presentations.items()):
        if beta == alpha and alpha[-1] % 2 == 0:
            critical.append(u)
            continue
        h = height(beta, rf, t)
        if beta[h - 1] % 2:
            continue  # upper side of its pair
        tau_beta = mu(rf, t, beta)
        tau = rf.expand_presentation(tau_beta)
        if presentations.get(tau) != tau_beta:
            raise RuntimeError(
                f"presentation {tau_beta} does not name a simplex of {word}"
            )
        if _mu_formula(rf, t, tau_beta) != beta:
            raise RuntimeError(f"matching is not involutive at {beta}")
        pairs.append((u, tau))

    if 2 * len(pairs) + len(critical) != len(presentations):
        raise RuntimeError(f"matching does not partition the simplices of {word}")
    pairs.sort(key=lambda p: (-len(p[0]), presentations[p[0]]))
    return Matching(word, t, tuple(pairs), tuple(critical))


# ---------------------------------------------------------------------------
# Matching validity


def matching_report(X: DeltaComplex, matching: Matching) -> dict[str, bool]:
    """Structural checks behind homology-preservation of a matching:
    partition, dimension adjacency, unit incidence, and coface locality.

    Locality here is the property the removal order actually needs: every
    cover of a lower cell sigma is its own partner, another lower cell
    (removed at a higher dimension level), or an upper cell whose partner
    precedes sigma in the presentation order (removed earlier at the same
    level). The naive variant without the last clause fails on real words:
    in a^2 b^2 a, the upper cell aba covers the lower cell aa.
    """
    rf = reduced_form(matching.word)

    def pres(u: Word) -> ExpPresentation:
        return (0,) * len(rf) if u == EMPTY else left_shifted(rf, u)

    cells = set(X.id_of_label)
    covered: set[Word] = set()
    lower = {s for s, _ in matching.pairs}
    lower_of = {t: s for s, t in matching.pairs}
    report = {"partition": True, "dims": True, "incidence": True, "locality": True}
    for s, t in matching.pairs:
        if s in covered or t in covered or s == t:
            report["partition"] = False
        covered |= {s, t}
        if len(t) != len(s) + 1:
            report["dims"] = False
            continue
        if s == EMPTY:
            inc = 1
        else:
            inc = incidence(X, X.id_of_label[s], X.id_of_label[t])
        if abs(inc) != 1:
            report["incidence"] = False
    for c in matching.critical:
        if c in covered:
            report["partition"] = False
        covered.add(c)
    if covered != cells | {EMPTY}:
        report["partition"] = False

    slots = X.coface_slots()
    for s, t in matching.pairs:
        if s == EMPTY:
            covers = X.cells(0)
        else:
            covers = [c for c, _ in slots[X.id_of_label[s]]]
        for c in covers:
            label = X.labels[c]
            if label == t or label in lower:
                continue
            partner = lower_of.get(label)
            if partner is None or not pres(partner) < pres(s):
                report["locality"] = False
    return report


@dataclass(frozen=True)
class PairCheck:
    sigma: Word
    tau: Word
    dims_ok: bool
    incidence: int
    incidence_ok: bool
    upward_closed: bool

    @property
    def ok(self) -> bool:
        return self.dims_ok and self.incidence_ok and self.upward_closed


@dataclass(frozen=True)
class CollapsingOrderReport:
    checks: tuple[PairCheck, ...]
    valid: bool

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "pairs": [
                {
                    "sigma": _word_name(c.sigma),
                    "tau": _word_name(c.tau),
                    "dims_ok": c.dims_ok,
                    "incidence": c.incidence,
                    "incidence_ok": c.incidence_ok,
                    "upward_closed": c.upward_closed,
                }
                for c in self.checks
            ],
        }


def validate_collapsing_order(
    X: DeltaComplex, pairs: tuple[tuple[Word, Word], ...]
) -> CollapsingOrderReport:
    """Check the three collapsing-order conditions pair by pair: adjacent
    dimensions, incidence +-1, and everything above sigma already removed.

    The empty tuple is accepted as a sigma and treated as the augmentation
    cell: it sits below every cell with incidence one against each vertex.
    """
    for s, t in pairs:
        if (s != EMPTY and s not in X.id_of_label) or t not in X.id_of_label:
            raise ValueError(f"pair ({s}, {t}) names cells outside the complex")
    slots = X.coface_slots()
    removed_ids: set[int] = set()
    checks = []
    valid = True
    for s, t in pairs:
        tid = X.id_of_label[t]
        if s == EMPTY:
            dims_ok = X.dim_of[tid] == 0
            inc = 1 if dims_ok else 0
        else:
            sid = X.id_of_label[s]
            dims_ok = X.dim_of[sid] == X.dim_of[tid] - 1
            inc = incidence(X, sid, tid) if dims_ok else 0
        incidence_ok = abs(inc) == 1

        allowed = removed_ids | {tid} | ({X.id_of_label[s]} if s != EMPTY else set())
        if s == EMPTY:
            up_ok = all(c in allowed for c in X.dim_of)
        else:
            up_ok = True
            stack = [X.id_of_label[s]]
            seen = set(stack)
            while stack:
                c = stack.pop()
                if c not in allowed:
                    up_ok = False
                    break
                for cof, _ in slots[c]:
                    if cof not in seen:
                        seen.add(cof)
                        stack.append(cof)

        checks.append(PairCheck(s, t, dims_ok, inc, incidence_ok, up_ok))
        valid = valid and checks[-1].ok
        if s != EMPTY:
            removed_ids.add(X.id_of_label[s])
        removed_ids.add(tid)
    return CollapsingOrderReport(tuple(checks), valid)


def skeleton_for_matching(X: DeltaComplex, matching: Matching) -> DeltaComplex:
    """The complex a full matching's order collapses: the whole complex for
    a perfect matching, the complex minus the critical top simplex when the
    last exponent is even (whose presence would break upward closure)."""
    if not matching.critical:
        return X
    return X.without({X.id_of_label[c] for c in matching.critical})


# ---------------------------------------------------------------------------
# Word reduction


def reduce_step(word: Word) -> tuple[Word, Matching]:
    """Delete one letter from the run after the first odd exponent.

    The removed simplices are exactly the subwords lost by the deletion;
    each is named by its shifted tuple using that run in full, and the
    capped flip matches them in pairs. Raises when no run before the last
    has an odd exponent.
    """
    rf = reduced_form(word)
    alpha = rf.exponents
    t = len(rf)
    odd = [i for i, e in enumerate(alpha) if e % 2]
    if not odd or odd[0] == t - 1:
        raise ValueError("word is fully reduced")
    k = odd[0] + 1  # 1-based index of the first odd run; k <= t-1
    runs = list(rf.runs)
    letter, e = runs[k]
    runs[k] = (letter, e - 1)
    new_word = tuple(a for a, n in runs for _ in range(n))

    removed = sorted(
        u for u in distinct_subwords(word) if not is_subword(u, new_word)
    )
    shifted = {}
    for u in removed:
        beta = p_shifted(rf, u, k + 1)
        if beta[k] != alpha[k]:
            raise RuntimeError(
                f"removed simplex {u} does not use run {k + 1} in full"
            )
        shifted[u] = beta

    pairs = []
    for u in removed:
        beta = shifted[u]
        h = height(beta, rf, k)
        if beta[h - 1] % 2:
            continue
        tau_beta = _mu_formula(rf, k, beta)
        tau = rf.expand_presentation(tau_beta)
        if shifted.get(tau) != tau_beta:
            raise RuntimeError(f"matching leaves the removed set at {u}")
        if _mu_formula(rf, k, tau_beta) != beta:
            raise RuntimeError(f"matching is not involutive at {u}")
        pairs.append((u, tau))
    if 2 * len(pairs) != len(removed):
        raise RuntimeError(f"removed simplices of {word} are not fully matched")
    pairs.sort(key=lambda p: (-len(p[0]), shifted[p[0]]))
    return new_word, Matching(word, k, tuple(pairs), ())


@dataclass(frozen=True)
class ReductionStep:
    kind: str  # "delete", "flip", or "contract"
    before: Word
    after: Word
    run_index: Optional[int]  # 1-based first odd run, for delete steps
    matching: Optional[Matching]


@dataclass(frozen=True)
class ReductionTrace:
    word: Word
    steps: tuple[ReductionStep, ...]
    terminal: Word

    def to_json(self) -> dict:
        return {
            "word": format_word(self.word),
            "terminal": format_word(self.terminal),
            "steps": [
                {
                    "kind": s.kind,
                    "before": format_word(s.before),
                    "after": format_word(s.after),
                    "run_index": s.run_index,
                    "matching": s.matching.to_json() if s.matching else None,
                }
                for s in self.steps
            ],
        }


def _validate_removal(word: Word, new_word: Word, matching: Matching) -> None:
    """Check a reduction step's matching as a collapsing order and its cell
    accounting against the two complexes."""
    X = build(word)
    removed = {s for s, _ in matching.pairs} | {t for _, t in matching.pairs}
    removed.discard(EMPTY)
    survivors = set(X.id_of_label) - removed
    expected = distinct_subwords(new_word) if new_word else set()
    if survivors != set(expected):
        raise RuntimeError(f"removed cells of {word} do not leave {new_word}")
    report = validate_collapsing_order(
        X, tuple(p for p in matching.ordered_pairs() if p[0] != EMPTY)
    )
    if not report.valid:
        bad = [c for c in report.checks if not c.ok]
        raise RuntimeError(f"collapsing order invalid for {word}: {bad[:3]}")


def reduce_to_core(word: Word, validate: bool = True) -> ReductionTrace:
    """Iterate letter deletions, reversing the word when only the last run
    is odd; a single odd run contracts through its perfect matching.

    The terminal word is the fundamental subword of a spherical input
    (every terminal exponent even) or a single letter otherwise.
    """
    if not word:
        raise ValueError("cannot reduce the empty word")
    steps: list[ReductionStep] = []
    current = word
    while True:
        try:
            new_word, matching = reduce_step(current)
        except ValueError:
            alpha = reduced_form(current).exponents
            if all(e % 2 == 0 for e in alpha):
                break  # the word is its own fundamental subword
            if len(alpha) > 1:
                flipped = current[::-1]
                steps.append(ReductionStep("flip", current, flipped, None, None))
                current = flipped
                continue
            if alpha[0] == 1:
                break  # single letter
            # a single odd run is stuck in both directions; its matching is
            # perfect, so everything above the base vertex collapses away
            matching = full_matching(current)
            after = current[:1]
            if validate:
                X = build(current)
                report = validate_collapsing_order(
                    X,
                    tuple(p for p in matching.ordered_pairs() if p[0] != EMPTY),
                )
                if not report.valid:
                    raise RuntimeError(f"contraction of {current} is invalid")
            steps.append(ReductionStep("contract", current, after, None, matching))
            current = after
            break
        else:
            if validate:
                _validate_removal(current, new_word, matching)
            steps.append(
                ReductionStep("delete", current, new_word, matching.t, matching)
            )
            current = new_word
    return ReductionTrace(word, tuple(steps), current)


# ---------------------------------------------------------------------------
# Alternating words


_BLOCK = (0, 0, 1, 1)  # a^2 b^2


def alt_word(n: int) -> Word:
    """The two-letter alternating word abab... of length n."""
    if n < 1:
        raise ValueError("alternating words have length at least 1")
    return tuple(i % 2 for i in range(n))


def _strip_blocks(u: Word) -> tuple[int, Word]:
    k = 0
    while u[:4] == _BLOCK:
        u = u[4:]
        k += 1
    return k, u


def alt_partner(u: Word) -> tuple[Word, str, bool]:
    """Partner of a two-letter word under the explicit matching rules.

    Returns (partner, rule tag, whether u is the lower side). The rules
    pair, for every block prefix p = (a^2 b^2)^k and every tail s:
    R1: p+b+s with p+ab+s, R2: p+a^3+s with p+a^2ba+s, R3: p with p+a,
    R4: p+a^2 with p+a^2b. Every two-letter word matches exactly one rule;
    in particular the empty cell pairs with the vertex a.
    """
    k, r = _strip_blocks(u)
    p = _BLOCK * k
    if r == ():
        return p + (0,), "R3", True
    if r == (0,):
        return p, "R3", False
    if r == (0, 0):
        return p + (0, 0, 1), "R4", True
    if r == (0, 0, 1):
        return p + (0, 0), "R4", False
    if r[0] == 1:
        return p + (0,) + r, "R1", True
    if r[:2] == (0, 1):
        return p + r[1:], "R1", False
    if r[:3] == (0, 0, 0):
        return p + (0, 0, 1, 0) + r[3:], "R2", True
    if r[:4] == (0, 0, 1, 0):
        return p + (0, 0, 0) + r[4:], "R2", False
    raise RuntimeError(f"unclassified two-letter word {u}")


def alternating_matching(n: int) -> Matching:
    """The rule matching on the complex of alt(n); a rule applies only when
    both of its cells are simplices. Exactly the fundamental subword stays
    unmatched when 3 divides n, nothing otherwise."""
    w = alt_word(n)
    cells = set(distinct_subwords(w)) | {EMPTY}
    pairs = []
    rules = []
    critical = []
    for u in sorted(cells, key=lambda x: (len(x), x)):
        partner, rule, is_lower = alt_partner(u)
        if partner not in cells:
            critical.append(u)
            continue
        back, _, _ = alt_partner(partner)
        if back != u:
            raise RuntimeError(f"rules are not involutive at {u}")
        if is_lower:
            pairs.append((u, partner))
            rules.append(rule)
    if 2 * len(pairs) + len(critical) != len(cells):
        raise RuntimeError(f"rules do not partition the simplices of alt({n})")
    order = sorted(range(len(pairs)), key=lambda i: (-len(pairs[i][0]), pairs[i][0]))
    return Matching(
        w,
        0,
        tuple(pairs[i] for i in order),
        tuple(critical),
        tuple(rules[i] for i in order),
    )


@dataclass(frozen=True)
class CollapseStep:
    sigma: Word
    tau: Word
    rule: str


@dataclass(frozen=True)
class CollapseRun:
    word: Word
    steps: tuple[CollapseStep, ...]
    core: Optional[Word]  # fundamental subword when 3 | n, else None
    terminal_cells: frozenset[Word]

    def to_json(self) -> dict:
        return {
            "word": format_word(self.word),
            "core": format_word(self.core) if self.core else None,
            "steps": [
                {
                    "sigma": _word_name(s.sigma),
                    "tau": _word_name(s.tau),
                    "dim": len(s.sigma) - 1,
                    "rule": s.rule,
                }
                for s in self.steps
            ],
            "terminal_cells": sorted(format_word(c) for c in self.terminal_cells),
        }


def alternating_collapse(n: int) -> CollapseRun:
    """Collapse the complex of alt(n) by elementary collapses, highest
    dimension first: to a single vertex when 3 does not divide n, onto the
    subcomplex of the fundamental subword when it does.

    Every executed pair is checked as an elementary collapse at its turn;
    when 3 divides n the rule pairs never straddle the core subcomplex, so
    skipping the pairs inside it removes exactly the outside cells.
    """
    w = alt_word(n)
    matching = alternating_matching(n)
    core = fundamental_subword(w) if n % 3 == 0 else None
    expected_critical = (core,) if core else ()
    if matching.critical != expected_critical:
        raise RuntimeError(f"unexpected critical cells {matching.critical}")

    if core:
        core_cells = distinct_subwords(core)
        keep = set(core_cells)
        for s, t in matching.pairs:
            if s != EMPTY and (s in keep) != (t in keep):
                raise RuntimeError(f"rule pair ({s}, {t}) straddles the core")
    else:
        keep = {w[:1]}  # the base vertex survives

    rule_of = {p: r for p, r in zip(matching.pairs, matching.rules)}
    pending = [
        (s, t)
        for s, t in matching.ordered_pairs()
        if s != EMPTY and s not in keep and t not in keep
    ]

    # A pair can only be collapsed once its cells are free, which may force
    # another pair of the same dimension to go first; scheduling greedily
    # (highest dimension first, rescanning after progress) finds the order.
    X = build(w)
    ids = dict(X.id_of_label)
    steps = []
    while pending:
        progressed = False
        waiting = []
        for s, t in pending:
            slots = X.coface_slots()
            sid, tid = ids[s], ids[t]
            if (
                len(slots[sid]) == 1
                and slots[sid][0][0] == tid
                and not slots[tid]
            ):
                X = elementary_collapse(X, sid, tid)
                steps.append(CollapseStep(s, t, rule_of[(s, t)]))
                progressed = True
            else:
                waiting.append((s, t))
        pending = waiting
        if pending and not progressed:
            raise RuntimeError(
                f"collapse of alt({n}) is stuck with {len(pending)} pairs pending"
            )
    terminal = frozenset(X.id_of_label)
    if terminal != frozenset(keep):
        raise RuntimeError(f"collapse of alt({n}) left {sorted(terminal)}")
    return CollapseRun(w, tuple(steps), core, terminal)


def elementary_collapse_by_label(X: DeltaComplex, s: Word, t: Word) -> DeltaComplex:
    return elementary_collapse(X, X.id_of_label[s], X.id_of_label[t])
