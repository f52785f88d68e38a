"""The benchmark clean-up memory and the catalog of benchmark questions."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import mask_to_literal
from .analysis import AnswerProfile
from .encoding import (
    CleanupMemory,
    Construction,
    Kind,
    Mode,
    SentenceSpec,
    Vocabulary,
    draw_vocabulary,
    encode_all,
)

SINGLE_ROLES = ("name", "sex", "age", "class", "type", "taste", "occupation")
DOUBLE_ROLES = tuple(f"{verb}_{side}" for verb in ("bite", "flee", "see", "cause") for side in ("agt", "obj"))
NAMED_FILLERS = ("Pat", "male", "66", "Fido", "John", "animal", "dog", "chickenlike", "7", "pet")
PADDING_FILLERS = tuple(f"filler_{i}" for i in range(1, 10))
# The atom total is 42 although the listed groups only add up to 34; the
# remaining 8 atoms are the four Plate verbs plus four unused padding atoms.
VERBS = ("bite", "flee", "see", "cause")
EXTRA_PADDING = tuple(f"padding_{i}" for i in range(1, 5))


def atom_spec() -> list[tuple[str, Kind]]:
    roles = [(r, Kind.ROLE) for r in SINGLE_ROLES + DOUBLE_ROLES]
    fillers = [(f, Kind.FILLER) for f in NAMED_FILLERS + PADDING_FILLERS + VERBS + EXTRA_PADDING]
    return roles + fillers


def _s(name, verb, *pairs):
    return SentenceSpec(name, tuple(pairs), verb)


# dependency order: every filler is defined before it is used
SENTENCES: tuple[SentenceSpec, ...] = (
    _s("PSmith", None, ("name", "Pat"), ("sex", "male"), ("age", "66")),
    _s("DogFido", None, ("class", "animal"), ("type", "dog"), ("taste", "chickenlike"),
       ("name", "Fido"), ("age", "7"), ("sex", "male"), ("occupation", "pet")),
    _s("(1a)", "bite", ("bite_agt", "Fido"), ("bite_obj", "Pat")),
    _s("(2a)", "flee", ("flee_agt", "Pat"), ("flee_obj", "Fido")),
    _s("(3a)", "see", ("see_agt", "John"), ("see_obj", "(1a)")),
    _s("(1b)", "bite", ("bite_agt", "Fido"), ("bite_obj", "PSmith")),
    _s("(2c)", "flee", ("flee_agt", "PSmith"), ("flee_obj", "Fido")),
    _s("(4a)", "cause", ("cause_agt", "(1a)"), ("cause_obj", "(2a)")),
    _s("(3b)", "see", ("see_agt", "John"), ("see_obj", "(1b)")),
    _s("(5a)", "see", ("see_agt", "John"), ("see_obj", "(4a)")),
    _s("(4c)", "cause", ("cause_agt", "(1b)"), ("cause_obj", "(2a)")),
    _s("(1c)", "bite", ("bite_agt", "DogFido"), ("bite_obj", "Pat")),
    _s("(2b)", "flee", ("flee_agt", "Pat"), ("flee_obj", "DogFido")),
    _s("(4b)", "cause", ("cause_agt", "(1b)"), ("cause_obj", "(2c)")),
    _s("(3c)", "see", ("see_agt", "John"), ("see_obj", "(1c)")),
    _s("(5b)", "see", ("see_agt", "John"), ("see_obj", "(4b)")),
    _s("(1d)", "bite", ("bite_agt", "DogFido"), ("bite_obj", "PSmith")),
    _s("(2d)", "flee", ("flee_agt", "PSmith"), ("flee_obj", "DogFido")),
    _s("(3d)", "see", ("see_agt", "John"), ("see_obj", "(1d)")),
)


def build_corpus(rng, n: int, construction: Construction = Construction.AGENT_OBJECT) -> tuple[Vocabulary, CleanupMemory]:
    vocabulary = draw_vocabulary(atom_spec(), n, rng)
    return vocabulary, encode_all(SENTENCES, vocabulary, construction, rng)


def structural_counts(construction: Construction) -> dict[str, int]:
    """Blade counts of every sentence; they do not depend on the random draw."""
    counts: dict[str, int] = {}
    for spec in SENTENCES:
        total = sum(counts.get(filler, 1) for _, filler in spec.pairs)
        if construction is Construction.PLATE and spec.verb:
            total += 1
        if construction is Construction.AGENT_OBJECT_ODD and total % 2 == 0:
            total += 1
        counts[spec.name] = total
    return counts


def max_blade_count(construction: Construction = Construction.AGENT_OBJECT_ODD) -> int:
    return max(structural_counts(construction).values())


@dataclass(frozen=True)
class QuestionCase:
    id: str
    item: str
    question: str
    expected: str
    mode: Mode
    construction: Construction  # the construction the blade ratio refers to
    meaningful_blades: int
    noisy_blades: int
    estimator: AnswerProfile | None = None


_RHS, _REV = Mode.RIGHT_HAND_SIDE, Mode.APPROPRIATE_REVERSED
_AO, _ODD = Construction.AGENT_OBJECT, Construction.AGENT_OBJECT_ODD

_CATALOG = (
    QuestionCase("PSmith#name", "PSmith", "name", "Pat", _RHS, _AO, 1, 2, AnswerProfile({1: 1}, 3)),
    QuestionCase("(5a)#see_agt", "(5a)", "see_agt", "John", _RHS, _AO, 1, 4),
    QuestionCase("(5a)#see_obj", "(5a)", "see_obj", "(4a)", _RHS, _ODD, 7, 2),
    QuestionCase("(1b)#bite_obj", "(1b)", "bite_obj", "PSmith", _REV, _AO, 3, 1, AnswerProfile({3: 1, 7: 1}, 4)),
    QuestionCase("(1b)#bite_agt", "(1b)", "bite_agt", "Fido", _REV, _AO, 1, 3, AnswerProfile({1: 1}, 4)),
    QuestionCase("(4a)#cause_obj", "(4a)", "cause_obj", "(2a)", _RHS, _ODD, 3, 4),
    QuestionCase("(4a)#cause_obj/core", "(4a)", "cause_obj", "(2a)", _REV, _AO, 2, 2,
                 AnswerProfile({2: 1, 4: 1, 8: 1}, 4)),
    QuestionCase("(3b)#see_obj", "(3b)", "see_obj", "(1b)", _RHS, _AO, 4, 1),
    QuestionCase("(5b)#see_obj", "(5b)", "see_obj", "(4b)", _RHS, _AO, 8, 1),
    QuestionCase("(3d)#see_obj", "(3d)", "see_obj", "(1d)", _RHS, _AO, 10, 1),
)


def question_catalog() -> list[QuestionCase]:
    return list(_CATALOG)


def get_question(case_id: str) -> QuestionCase:
    for case in _CATALOG:
        if case.id == case_id:
            return case
    known = ", ".join(c.id for c in _CATALOG)
    raise KeyError(f"unknown question {case_id!r}; known: {known}")


def dump_corpus(vocabulary: Vocabulary, memory: CleanupMemory) -> str:
    """Plain-text listing of atoms and sentence expansions for fixture diffs."""
    n = vocabulary.dimension
    lines = [f"# dimension {n}"]
    for atom in vocabulary.atoms:
        lines.append(f"atom {atom.name} {atom.kind.value} c_{mask_to_literal(atom.mask, n)}")
    for item in memory.items:
        if item.atomic:
            continue
        extra = "" if item.odding_mask is None else f" odding=c_{mask_to_literal(item.odding_mask, n)}"
        lines.append(f"sentence {item.name} k={item.blade_count}{extra} = {item.value}")
    return "\n".join(lines) + "\n"
