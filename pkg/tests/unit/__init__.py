"""This module contains unit tests."""
