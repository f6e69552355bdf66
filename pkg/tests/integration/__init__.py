"""This module contains integration tests."""
