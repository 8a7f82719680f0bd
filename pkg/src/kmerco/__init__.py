"""KmerCo: k-mer counting and trustworthy/erroneous classification on a packed counting Bloom filter."""
from .countbf import CountBF, FilterPlan, Outcome, deserialize, plan_dimensions, serialize
from .kmer_core import canonical, canonical_kmer, extract_kmers, reverse_complement
from .oracle import ExactCounts, exact_classify, exact_count
from .pipeline import (ClassificationStats, InsertionStats, classification_phase,
                       insertion_phase)

__all__ = [
    "CountBF", "FilterPlan", "Outcome", "deserialize", "plan_dimensions", "serialize",
    "canonical", "canonical_kmer", "extract_kmers", "reverse_complement",
    "ExactCounts", "exact_classify", "exact_count",
    "ClassificationStats", "InsertionStats", "classification_phase", "insertion_phase",
]
__version__ = "0.1.0"
