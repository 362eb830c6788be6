"""Unit test package for kreinframes."""
