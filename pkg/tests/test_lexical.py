import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ontomatch.errors import ContractViolationError
from ontomatch.lexical import (
    LexicalParams,
    VirtualDocument,
    build_idf,
    build_virtual_document,
    isub_score,
    local_name,
    tokenize,
    vdoc_score,
    virtual_documents,
)
from ontomatch.ontology import ClassDecl, Ontology


# ---------------------------------------------------------------------------
# independent oracle: straight-line reimplementation of the string metric,
# with a brute-force longest-common-substring search
# ---------------------------------------------------------------------------

def _oracle_lcs(a, b):
    for length in range(min(len(a), len(b)), 1, -1):
        for i in range(len(a) - length + 1):
            for j in range(len(b) - length + 1):
                if a[i:i + length] == b[j:j + length]:
                    return length, i, j
    return 0, 0, 0


def oracle_isub(s1, s2, p=0.6, cap=4, scale=0.1):
    a, b = s1.lower(), s2.lower()
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.5
    if a == b:
        return 1.0
    la, lb = len(a), len(b)
    matched = 0
    wa, wb = a, b
    while True:
        length, i, j = _oracle_lcs(wa, wb)
        if length < 2:
            break
        matched += length
        wa = wa[:i] + wa[i + length:]
        wb = wb[:j] + wb[j + length:]
    comm = 2.0 * matched / (la + lb)
    ul1 = (la - matched) / la
    ul2 = (lb - matched) / lb
    diff = ul1 * ul2 / (p + (1 - p) * (ul1 + ul2 - ul1 * ul2))
    k = 0
    while k < min(la, lb) and a[k] == b[k]:
        k += 1
    winkler = min(cap, k) * scale * (1.0 - comm)
    raw = comm - diff + winkler
    return min(1.0, max(0.0, (raw + 1.0) / 2.0))


class TestTokenize:
    def test_camel_case(self):
        assert tokenize("JournalPaper") == ["journal", "paper"]

    def test_empty(self):
        assert tokenize("") == []

    def test_separators_and_digits(self):
        assert tokenize("student_report-2012") == ["student", "report", "2012"]

    def test_stopwords_dropped(self):
        assert tokenize("The Journal of the Web") == ["journal", "web"]

    def test_upper_runs_stay_together(self):
        assert tokenize("ISBNCode") == ["isbncode"]


class TestIsub:
    def test_identical(self):
        assert isub_score("Journal", "Journal") == 1.0

    def test_one_empty(self):
        assert isub_score("", "Paper") == 0.5
        assert isub_score("Paper", "") == 0.5

    def test_both_empty(self):
        assert isub_score("", "") == 1.0

    def test_case_insensitive(self):
        assert isub_score("BOOK", "book") == 1.0

    def test_journal_journalpaper_frozen(self):
        # Comm = 14/19, Diff = 0, Winkler = 0.4 * 5/19; raw = 16/19
        expected = (16 / 19 + 1) / 2
        got = isub_score("Journal", "JournalPaper")
        assert got == pytest.approx(expected, abs=1e-12)
        assert got > 0.75
        assert got == pytest.approx(oracle_isub("Journal", "JournalPaper"), abs=1e-12)

    @pytest.mark.parametrize("a,b", [
        ("Academic", "StudentReport"),
        ("Conference", "ConferencePaper"),
        ("publishedBy", "publisher"),
        ("abba", "baab"),
        ("Magazine", "Magazin"),
        ("xy", "yx"),
        ("TechnicalReport", "TechReport"),
        ("aaaa", "aa"),
    ])
    def test_matches_oracle(self, a, b):
        assert isub_score(a, b) == pytest.approx(oracle_isub(a, b), abs=1e-12)

    @given(st.text(max_size=64), st.text(max_size=64))
    @settings(max_examples=300, deadline=None)
    def test_symmetric_and_bounded(self, a, b):
        s = isub_score(a, b)
        assert 0.0 <= s <= 1.0
        assert s == isub_score(b, a)

    @given(st.text(min_size=1, max_size=64))
    @settings(max_examples=200, deadline=None)
    def test_self_similarity_is_one(self, s):
        assert isub_score(s, s) == 1.0


class TestVirtualDocuments:
    def test_local_name_only(self):
        ont = Ontology("t", (ClassDecl("Book"),), (), ())
        d = build_virtual_document(ont, "Book")
        assert d.tokens == {"book": 1.0}

    def test_label_adds_weight(self):
        ont = Ontology("t", (ClassDecl("Book", label="Book"),), (), ())
        d = build_virtual_document(ont, "Book")
        assert d.tokens == {"book": pytest.approx(1.8)}

    def test_subclass_neighbor(self):
        ont = Ontology("t", (ClassDecl("Paper"), ClassDecl("JournalPaper", ("Paper",))), (), ())
        d = build_virtual_document(ont, "Paper")
        assert d.tokens == {"paper": pytest.approx(1.2), "journal": pytest.approx(0.2)}

    def test_declaration_order_invariance(self):
        a = Ontology("t", (ClassDecl("Paper"), ClassDecl("Note"),
                           ClassDecl("JournalPaper", ("Paper",))), (), ())
        b = Ontology("t", (ClassDecl("JournalPaper", ("Paper",)), ClassDecl("Paper"),
                           ClassDecl("Note")), (), ())
        assert build_virtual_document(a, "Paper").tokens == \
            build_virtual_document(b, "Paper").tokens

    def test_weights_strictly_positive(self, seed_ontology):
        for doc in virtual_documents(seed_ontology).values():
            assert all(w > 0 for w in doc.tokens.values())

    def test_unknown_entity(self, seed_ontology):
        from ontomatch.errors import UnknownEntityError
        with pytest.raises(UnknownEntityError):
            build_virtual_document(seed_ontology, "nope")


class TestVdocScore:
    def test_identical_documents(self):
        d = VirtualDocument("x", {"a": 1.0, "b": 2.0})
        idf = {"a": 1.0, "b": 0.5}
        assert vdoc_score(d, d, idf) == pytest.approx(1.0)

    def test_disjoint_documents(self):
        d1 = VirtualDocument("x", {"a": 1.0})
        d2 = VirtualDocument("y", {"b": 1.0})
        assert vdoc_score(d1, d2, {"a": 1.0, "b": 1.0}) == 0.0

    def test_half_overlap(self):
        d1 = VirtualDocument("x", {"a": 1.0})
        d2 = VirtualDocument("y", {"a": 1.0, "b": 1.0})
        got = vdoc_score(d1, d2, {"a": 1.0, "b": 1.0})
        assert got == pytest.approx(1 / math.sqrt(2))

    def test_missing_idf_token(self):
        d1 = VirtualDocument("x", {"a": 1.0})
        d2 = VirtualDocument("y", {"b": 1.0})
        with pytest.raises(ContractViolationError, match="b"):
            vdoc_score(d1, d2, {"a": 1.0})

    def test_symmetry_and_range(self, seed_ontology):
        docs = virtual_documents(seed_ontology)
        idf = build_idf(list(docs.values()) * 2)
        names = list(docs)[:12]
        for e1 in names:
            for e2 in names:
                s = vdoc_score(docs[e1], docs[e2], idf)
                assert 0.0 <= s <= 1.0
                assert s == pytest.approx(vdoc_score(docs[e2], docs[e1], idf))


class TestIdf:
    def test_formula(self):
        docs = [VirtualDocument("1", {"a": 1.0, "b": 1.0}),
                VirtualDocument("2", {"a": 2.0})]
        idf = build_idf(docs)
        assert idf["a"] == pytest.approx(math.log(1 + 2 / 2))
        assert idf["b"] == pytest.approx(math.log(1 + 2 / 1))

    def test_everywhere_token_keeps_positive_idf(self):
        docs = [VirtualDocument(str(i), {"t": 1.0}) for i in range(5)]
        got = build_idf(docs)["t"]
        assert got == pytest.approx(math.log(2))
        assert got > 0


class TestParams:
    def test_local_name_splits_uri(self):
        assert local_name("http://x.org/onto#Book") == "Book"
        assert local_name("plain") == "plain"

    def test_invalid_diff_p(self):
        with pytest.raises(ValueError):
            LexicalParams(isub_diff_p=0.0)

    def test_negative_weight(self):
        with pytest.raises(ValueError):
            LexicalParams(vdoc_label_w=-0.1)
