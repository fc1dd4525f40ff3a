"""Corpus files, the reference oracle, statistics and the command line."""
