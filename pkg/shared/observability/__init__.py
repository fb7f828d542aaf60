"""Observability package for Prometheus metrics."""
