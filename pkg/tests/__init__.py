"""Test suite for travel speed estimation and prediction."""
