"""Selectional preference learning over concept taxonomies.

Learns which semantic classes of nouns a verb (or verb class) prefers
as subject/object from sense-tagged triples, and applies the learned
preferences to noun sense disambiguation.
"""

from .corpus import (RELATIONS, FrequencyTables, Relation, SenseInventory,
                     Triple, count_frequencies, load_inventory, load_triples)
from .errors import InputError
from .evaluate import (EvalReport, Metrics, compute_metrics, crossvalidate,
                       holdout_documents)
from .prefmodel import (ClassEstimates, PreferenceModel, PreferenceScore,
                        build_estimates, read_model_dump, write_model_dump)
from .taxonomy import Taxonomy, load_taxonomy
from .wsd import (Disambiguator, Explanation, ModelKind, WsdDecision,
                  WsdInstance)

__version__ = "0.1.0"

__all__ = [
    "RELATIONS", "FrequencyTables", "Relation", "SenseInventory", "Triple",
    "count_frequencies", "load_inventory", "load_triples", "InputError",
    "EvalReport", "Metrics", "compute_metrics", "crossvalidate",
    "holdout_documents", "ClassEstimates", "PreferenceModel",
    "PreferenceScore", "build_estimates", "read_model_dump",
    "write_model_dump", "Taxonomy", "load_taxonomy", "Disambiguator",
    "Explanation", "ModelKind", "WsdDecision", "WsdInstance", "__version__",
]
