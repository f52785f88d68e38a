import numpy as np
import pytest
from hypothesis import strategies as st

from gavsa.algebra import Multivector, literal_to_mask
from gavsa.encoding import Atom, CleanupMemory, EncodedItem, Kind, Vocabulary


def mv(text: str, n: int | None = None) -> Multivector:
    return Multivector.parse(text, n)


@st.composite
def multivectors(draw, n: int | None = None, max_terms: int = 6):
    if n is None:
        n = draw(st.integers(1, 8))
    terms = draw(st.dictionaries(
        st.integers(0, (1 << n) - 1), st.integers(-3, 3).filter(bool), max_size=max_terms))
    return Multivector(n, terms)


@st.composite
def multivector_tuples(draw, size: int, max_n: int = 8, max_terms: int = 6):
    n = draw(st.integers(1, max_n))
    return tuple(draw(multivectors(n, max_terms)) for _ in range(size))


def random_multivector(rng, n: int, max_terms: int = 8) -> Multivector:
    k = int(rng.integers(0, max_terms + 1))
    masks = rng.integers(0, 1 << n, size=k).tolist()
    coeffs = rng.choice([-2, -1, 1, 2], size=k).tolist()
    return Multivector(n, zip(masks, coeffs))


class ScriptedRng:
    """Stand-in generator that hands out prescribed masks in order."""

    def __init__(self, masks):
        self.masks = list(masks)

    def integers(self, low, high, size=None, dtype=None):
        if size is None:
            return self.masks.pop(0)
        out, self.masks = self.masks[:size], self.masks[size:]
        return np.array(out, dtype=np.uint64)


def literal_vocabulary(n: int, entries: dict[str, tuple[str, Kind]]) -> Vocabulary:
    return Vocabulary(n, tuple(Atom(name, kind, literal_to_mask(bits)) for name, (bits, kind) in entries.items()))


R, F = Kind.ROLE, Kind.FILLER

PSMITH_VOCAB = {
    "Pat": ("00100", F), "male": ("00111", F), "66": ("11000", F),
    "name": ("00010", R), "sex": ("11100", R), "age": ("10001", R),
}

SEE_BITE_VOCAB = {
    "see_agt": ("00101", R), "see_obj": ("01010", R), "bite_agt": ("10110", R), "bite_obj": ("00001", R),
    "John": ("00101", F), "Pat": ("10000", F), "Fido": ("10001", F),
}


@pytest.fixture
def psmith_vocab():
    return literal_vocabulary(5, PSMITH_VOCAB)


@pytest.fixture
def see_bite_vocab():
    return literal_vocabulary(5, SEE_BITE_VOCAB)


def memory_of(n: int, named: dict[str, Multivector], kinds: dict[str, Kind] | None = None) -> CleanupMemory:
    kinds = kinds or {}
    items = [
        EncodedItem(name, value, len(value), kinds.get(name, Kind.FILLER), atomic=len(value) == 1)
        for name, value in named.items()
    ]
    return CleanupMemory(n, items)


ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.fixture
def criterion(request):
    """Record one pass/fail line for an acceptance criterion; printed at the end of the run."""
    state = {"detail": ""}

    def note(text: str) -> None:
        state["detail"] = text

    yield note
    key = request.node.name
    failed = getattr(request.node, "rep_call", None)
    verdict = "FAIL" if failed is None or failed.failed else "PASS"
    ACCEPTANCE_LINES[key] = f"{verdict}  {request.node.function.__doc__.strip()}  {state['detail']}".rstrip()


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    report = yield
    if report.when == "call":
        item.rep_call = report
    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k.split("_")[2])):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
