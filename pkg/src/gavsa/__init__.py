"""Geometric-algebra distributed representations with HRR and BSC baselines."""

from .algebra import (
    BladeMask,
    DimensionError,
    Multivector,
    SignedBlade,
    blade_product,
    dense_oracle_product,
    geometric_product,
    inner_product,
    reversion,
    sign_exponent,
)
from .analysis import (
    AnswerProfile,
    MemoryProfile,
    cancellation_probability,
    expected_potential_answers_general,
    expected_potential_answers_simple,
)
from .cartan import (
    Form,
    Signature,
    blade_matrix,
    euclidean_measure,
    generator_matrix,
    hamming_measure,
    multivector_matrix,
    signature,
)
from .corpus import build_corpus, question_catalog
from .encoding import (
    CleanupMemory,
    Construction,
    Measure,
    Mode,
    Vocabulary,
    ask,
    cleanup_query,
    encode,
    recognize,
)
from .experiments import ExperimentConfig, run, write_csv

__version__ = "0.1.0"
