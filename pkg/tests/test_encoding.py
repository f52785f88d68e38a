import numpy as np
import pytest
from hypothesis import given, strategies as st

from gavsa.algebra import DimensionError, Multivector, literal_to_mask, reversion
from gavsa.analysis import cancellation_probability
from gavsa.cartan import hamming_measure, signature
from gavsa.encoding import (
    Atom,
    CleanupMemory,
    Construction,
    EncodingError,
    Kind,
    Measure,
    Mode,
    SentenceSpec,
    Vocabulary,
    argmax_set,
    ask,
    brute_force_scores,
    cleanup_query,
    draw_vocabulary,
    encode,
    encode_all,
    recognize,
)

from conftest import PSMITH_VOCAB, SEE_BITE_VOCAB, ScriptedRng, memory_of, multivectors, mv

RHS, REV = Mode.RIGHT_HAND_SIDE, Mode.APPROPRIATE_REVERSED
AO = Construction.AGENT_OBJECT

PSMITH = SentenceSpec("PSmith", (("name", "Pat"), ("sex", "male"), ("age", "66")))
ONE_A = SentenceSpec("(1a)", (("bite_agt", "Fido"), ("bite_obj", "Pat")), "bite")
THREE_A = SentenceSpec("(3a)", (("see_agt", "John"), ("see_obj", "(1a)")), "see")


@pytest.fixture
def psmith_memory(psmith_vocab):
    return encode_all([PSMITH], psmith_vocab, AO)


@pytest.fixture
def see_bite_memory(see_bite_vocab):
    return encode_all([ONE_A, THREE_A], see_bite_vocab, AO)


class TestVocabulary:
    def test_scripted_stream_reproduces_worked_assignment(self):
        spec = [(name, kind) for name, (_, kind) in PSMITH_VOCAB.items()]
        masks = [literal_to_mask(bits) for bits, _ in PSMITH_VOCAB.values()]
        vocab = draw_vocabulary(spec, 5, ScriptedRng(masks))
        assert vocab["Pat"].mask == literal_to_mask("00100")
        assert vocab["age"] == Atom("age", Kind.ROLE, literal_to_mask("10001"))
        assert str(encode(PSMITH, CleanupMemory.from_vocabulary(vocab), vocab, AO).value) == \
            "-c_00110 + c_11011 + c_01001"

    def test_one_bit(self):
        vocab = draw_vocabulary([("a", Kind.ROLE), ("b", Kind.FILLER)], 1, np.random.default_rng(0))
        assert {vocab["a"].mask, vocab["b"].mask} <= {0, 1}

    def test_deterministic(self):
        spec = [(f"x{i}", Kind.FILLER) for i in range(20)]
        a = draw_vocabulary(spec, 30, np.random.default_rng(9))
        b = draw_vocabulary(spec, 30, np.random.default_rng(9))
        assert a == b

    def test_wide_dimension(self):
        vocab = draw_vocabulary([("x", Kind.FILLER)], 63, np.random.default_rng(1))
        assert 0 <= vocab["x"].mask < 1 << 63

    def test_duplicate_names(self):
        with pytest.raises(EncodingError):
            draw_vocabulary([("x", Kind.ROLE), ("x", Kind.FILLER)], 4, np.random.default_rng(0))
        with pytest.raises(EncodingError):
            Vocabulary(4, (Atom("x", Kind.ROLE, 1), Atom("x", Kind.ROLE, 2)))

    def test_mask_too_wide(self):
        with pytest.raises(DimensionError):
            Vocabulary(2, (Atom("x", Kind.ROLE, 4),))

    def test_duplicate_masks_allowed(self, see_bite_vocab):
        assert see_bite_vocab["John"].mask == see_bite_vocab["see_agt"].mask


class TestEncode:
    def test_psmith(self, psmith_memory):
        item = psmith_memory["PSmith"]
        assert item.value == mv("-c_00110 + c_11011 + c_01001")
        assert item.blade_count == 3
        assert item.odding_mask is None

    def test_1a_and_3a(self, see_bite_memory):
        assert see_bite_memory["(1a)"].value == mv("c_00111 - c_10001")
        assert see_bite_memory["(1a)"].blade_count == 2
        assert see_bite_memory["(3a)"].value == mv("-c_00000 - c_01101 - c_11011")
        assert see_bite_memory["(3a)"].blade_count == 3

    def test_plate_adds_verb(self):
        vocab = Vocabulary(5, tuple(
            [Atom(n, k, literal_to_mask(b)) for n, (b, k) in SEE_BITE_VOCAB.items()]
            + [Atom("bite", Kind.FILLER, literal_to_mask("11111"))]))
        memory = encode_all([ONE_A], vocab, Construction.PLATE)
        assert memory["(1a)"].value == mv("c_00111 - c_10001 + c_11111")
        assert memory["(1a)"].blade_count == 3

    def test_odding_only_for_even_counts(self, see_bite_vocab):
        rng = np.random.default_rng(0)
        memory = encode_all([ONE_A, THREE_A], see_bite_vocab, Construction.AGENT_OBJECT_ODD, rng)
        one_a = memory["(1a)"]
        assert one_a.blade_count == 3 and one_a.odding_mask is not None
        assert one_a.value == mv("c_00111 - c_10001") + Multivector(5, {one_a.odding_mask: 1})
        # (3a) gets 1 + 3 = 4 blades, so it is odded too
        assert memory["(3a)"].blade_count == 5

    def test_odding_needs_rng(self, see_bite_vocab):
        with pytest.raises(EncodingError):
            encode_all([ONE_A], see_bite_vocab, Construction.AGENT_OBJECT_ODD)

    @given(st.integers(0, 2**32 - 1), st.integers(2, 12))
    def test_odd_parity(self, seed, n):
        from gavsa.corpus import build_corpus

        _, memory = build_corpus(np.random.default_rng(seed), n, Construction.AGENT_OBJECT_ODD)
        assert all(item.blade_count % 2 == 1 for item in memory.items)

    def test_collisions_keep_structural_count(self):
        vocab = Vocabulary(3, (Atom("r", Kind.ROLE, 1), Atom("s", Kind.ROLE, 2),
                               Atom("a", Kind.FILLER, 2), Atom("b", Kind.FILLER, 1)))
        # r*a and s*b are the same blade with opposite signs
        item = encode_all([SentenceSpec("X", (("r", "a"), ("s", "b")))], vocab, AO)["X"]
        assert len(item.value) == 0
        assert item.blade_count == 2

    def test_errors(self, see_bite_vocab):
        memory = CleanupMemory.from_vocabulary(see_bite_vocab)
        with pytest.raises(EncodingError):
            encode(SentenceSpec("x", (("John", "Pat"),)), memory, see_bite_vocab, AO)
        with pytest.raises(EncodingError):
            encode(SentenceSpec("x", (("see_agt", "nobody"),)), memory, see_bite_vocab, AO)
        with pytest.raises(EncodingError):
            encode(SentenceSpec("x", (("see_agt", "see_obj"),)), memory, see_bite_vocab, AO)
        with pytest.raises(EncodingError):
            SentenceSpec("empty", ())
        with pytest.raises(EncodingError):
            encode_all([ONE_A, ONE_A], see_bite_vocab, AO)


class TestAsk:
    def test_psmith_name(self, psmith_memory):
        ps, name = psmith_memory["PSmith"], psmith_memory["name"]
        assert ask(ps, name, REV) == mv("c_00100 + c_11001 - c_01011")
        assert ask(ps, name, RHS) == mv("-c_00100 - c_11001 - c_01011")

    def test_3a_see_obj(self, see_bite_memory):
        got = ask(see_bite_memory["(3a)"], see_bite_memory["see_obj"], REV)
        assert got == mv("c_01010 + c_00111 - c_10001")

    def test_filler_question_reverses_on_the_right(self, see_bite_memory):
        s, john = see_bite_memory["(3a)"], see_bite_memory["John"]
        assert ask(s, john, REV) == s.value * reversion(john.value)

    def test_accepts_raw_multivector(self, psmith_memory):
        assert ask(psmith_memory["PSmith"].value, psmith_memory["name"], RHS) == \
            ask(psmith_memory["PSmith"], psmith_memory["name"], RHS)

    @given(multivectors(n=6), st.integers(0, 63))
    def test_reversed_blade_cancels(self, s, q):
        blade = Multivector(6, {q: 1})
        assert reversion(blade) * blade * s == s

    def test_role_question_never_cancels(self):
        rng = np.random.default_rng(11)
        spec = [(f"r{i}", Kind.ROLE) for i in range(4)] + [(f"f{i}", Kind.FILLER) for i in range(4)]
        sentence = SentenceSpec("S", tuple((f"r{i}", f"f{i}") for i in range(4)))
        checked = 0
        while checked < 200:
            vocab = draw_vocabulary(spec, 12, rng)
            memory = encode_all([sentence], vocab, AO)
            chunks = [vocab[f"r{i}"].mask ^ vocab[f"f{i}"].mask for i in range(4)]
            if len(set(chunks)) < 4:
                continue
            for j in range(4):
                noisy = ask(memory["S"], memory[f"r{j}"], REV)
                fj = memory[f"f{j}"].value
                others = [vocab[f"r{j}"].mask ^ c for c in chunks]
                if others.count(vocab[f"f{j}"].mask) == 1:
                    assert cleanup_query(memory, noisy).scores[memory.names().index(f"f{j}")] >= 1
                    assert fj.coefficient(vocab[f"f{j}"].mask) == 1
            checked += 1


class TestCleanup:
    def test_worked_query(self, psmith_memory):
        noisy = ask(psmith_memory["PSmith"], psmith_memory["name"], REV)
        res = cleanup_query(psmith_memory, noisy)
        assert res.potential == ("Pat",) and res.top == ("Pat",)
        assert dict(zip(res.names, res.scores)) == {
            "Pat": 1, "male": 0, "66": 0, "name": 0, "sex": 0, "age": 0, "PSmith": 0}

    def test_zero_noisy(self, psmith_memory):
        res = cleanup_query(psmith_memory, Multivector(5))
        assert res.potential == () and res.top == () and res.best == 0

    def test_dimension_mismatch(self, psmith_memory):
        with pytest.raises(DimensionError):
            cleanup_query(psmith_memory, Multivector(4))

    @pytest.mark.parametrize("definite", [False, True])
    def test_matches_brute_force(self, definite):
        from gavsa.corpus import build_corpus

        rng = np.random.default_rng(4)
        for _ in range(30):
            _, memory = build_corpus(rng, 4)
            for item, question in [("PSmith", "name"), ("(5a)", "see_obj"), ("(4b)", "cause_agt")]:
                noisy = ask(memory[item], memory[question], RHS)
                res = cleanup_query(memory, noisy, definite)
                ref = brute_force_scores(memory, noisy, definite)
                assert list(res.scores) == ref
                assert set(res.top) == {memory.names()[i] for i in argmax_set(ref) if ref[i]}


TIE_ITEMS = {
    "q": mv("c_1000"),
    "S": mv("c_1010 - c_0001 + c_0100"),
    "A": mv("c_0000 - c_1100"),
    "B": mv("-c_0110 + c_1001"),
}


class TestRecognize:
    def test_worked_example(self, psmith_memory):
        out = recognize(psmith_memory, "PSmith", "name", "Pat", REV)
        assert out.correct and out.correct_in_potential
        assert out.potential_count == 1 and out.top_set_size == 1
        assert out.measure_used is Measure.INNER

    def test_single_candidate_falls_back(self, psmith_memory):
        out = recognize(psmith_memory, "PSmith", "name", "Pat", REV, Measure.HAMMING)
        assert out.correct and out.measure_used is Measure.INNER

    def test_cancelled_answer(self):
        memory = memory_of(4, {"q": mv("c_0001"), "S": mv("c_0011 + c_1001"), "A": mv("c_0010 - c_1000"),
                               "B": mv("c_0010")}, {"q": Kind.ROLE})
        noisy = ask(memory["S"], memory["q"], RHS)
        assert cleanup_query(memory, noisy).scores[2] == 0
        out = recognize(memory, "S", "q", "A", RHS)
        assert not out.correct and not out.correct_in_potential

    def test_hamming_breaks_inner_tie(self):
        memory = memory_of(4, TIE_ITEMS, {"q": Kind.ROLE})
        noisy = ask(memory["S"], memory["q"], RHS)
        res = cleanup_query(memory, noisy)
        assert set(res.top) == {"A", "B"} and res.scores[2] == res.scores[3]
        ns = signature(noisy)
        assert hamming_measure(ns, memory.signature("A")) > hamming_measure(ns, memory.signature("B"))

        inner = recognize(memory, "S", "q", "A", RHS)
        assert inner.correct and inner.top_set_size == 2
        assert recognize(memory, "S", "q", "B", RHS).correct  # tie membership
        ham = recognize(memory, "S", "q", "A", RHS, Measure.HAMMING)
        assert ham.correct and ham.measure_used is Measure.HAMMING
        assert not recognize(memory, "S", "q", "B", RHS, Measure.HAMMING).correct

    def test_unknown_expected(self, psmith_memory):
        with pytest.raises(KeyError):
            recognize(psmith_memory, "PSmith", "name", "Nobody", REV)

    def test_euclidean_requires_matrix_measure(self):
        from gavsa.encoding import _measure_fn

        with pytest.raises(ValueError):
            _measure_fn(Measure.INNER)

    def test_outcome_invariants(self):
        from gavsa.corpus import build_corpus

        rng = np.random.default_rng(8)
        for _ in range(50):
            _, memory = build_corpus(rng, 6, Construction.AGENT_OBJECT_ODD)
            for measure in Measure:
                out = recognize(memory, "(4a)", "cause_obj", "(2a)", RHS, measure)
                assert out.potential_count >= out.top_set_size >= 0
                assert not out.correct or out.correct_in_potential

    def test_deterministic(self):
        from gavsa.corpus import build_corpus

        def run(seed):
            rng = np.random.default_rng(seed)
            outs = []
            for _ in range(20):
                _, memory = build_corpus(rng, 5, Construction.AGENT_OBJECT_ODD)
                outs.append(recognize(memory, "(5a)", "see_obj", "(4a)", RHS, Measure.EUCLIDEAN))
            return outs

        assert run(3) == run(3)


def test_argmax_set_with_infinity():
    assert argmax_set([1, float("inf"), 3, float("inf")]) == [1, 3]
    assert argmax_set([]) == []


def test_cancellation_frequency():
    """Four distinct answer blades cancel with probability C(4,2)/16."""
    rng = np.random.default_rng(2024)
    spec = [("r", Kind.ROLE), ("s", Kind.ROLE)] + [(f"a{i}", Kind.ROLE) for i in range(4)] \
        + [(f"f{i}", Kind.FILLER) for i in range(4)] + [("g", Kind.FILLER)]
    answer = SentenceSpec("X", tuple((f"a{i}", f"f{i}") for i in range(4)))
    outer = SentenceSpec("S", (("r", "X"), ("s", "g")))
    trials, zeros = 20000, 0
    for _ in range(trials):
        vocab = draw_vocabulary(spec, 30, rng)
        memory = encode_all([answer, outer], vocab, AO)
        noisy = ask(memory["S"], memory["r"], RHS)
        zeros += cleanup_query(memory, noisy).scores[memory.names().index("X")] == 0
    assert zeros / trials == pytest.approx(float(cancellation_probability(2)), abs=0.02)
