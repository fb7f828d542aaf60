"""
Batch workers.

The estimation worker turns matched traces into completed speed tables and one-step
predictions.
"""
