"""Translation equivalence in the free group of rank two."""
from .decider import DecisionResult, Witness, decide, orbit_length_spectrum
from .oracle import decide_mixed
from .whitehead import Family, Generator, GeneratorChain, normalize_chain
from .words import CyclicWord, Word, cyclic_reduce, parse_word

__all__ = [
    "CyclicWord",
    "DecisionResult",
    "Family",
    "Generator",
    "GeneratorChain",
    "Witness",
    "Word",
    "cyclic_reduce",
    "decide",
    "decide_mixed",
    "normalize_chain",
    "orbit_length_spectrum",
    "parse_word",
]
