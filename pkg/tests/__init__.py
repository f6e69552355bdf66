"""This module contains all the tests for the markov_belief package."""
