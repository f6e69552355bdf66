"""Qualitative Markovian belief change: plausibility priors over runs, filtering and constraint entailment."""
