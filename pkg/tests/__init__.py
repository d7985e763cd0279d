"""Tests for linsds."""
