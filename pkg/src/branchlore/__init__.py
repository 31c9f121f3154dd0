"""Exact branch-misprediction rates of the MP and KMP string matchers on memoryless texts."""

from .analysis import (
    MAINLOOP_BOUND,
    MispredictionReport,
    analyze,
    build_predictor_product,
    comparison_misprediction_rate,
    counter_rate,
    expected_comparisons_rate,
    guard_rate,
    kappa,
    stationary_prefix_distribution,
)
from .automata import (
    CmpOutput,
    PrefixAutomaton,
    Transducer,
    build_comparison_transducer,
    build_guard_transducer,
    build_prefix_automaton,
    transduce,
)
from .borders import FailureTable, Variant, failure_table, failure_table_kmp, failure_table_mp, longest_border
from .predictor import PredictorState, predictor_run, predictor_step
from .simulator import FindRun, monte_carlo, run_find, simulate_mispredictions
from .text_model import (
    Alphabet,
    ModelError,
    Pattern,
    SymbolDistribution,
    binary_distribution,
    make_distribution,
    sample_text,
    uniform_distribution,
    word_probability,
)

__version__ = "0.1.0"
