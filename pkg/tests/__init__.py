"""Tests for levelness."""
