import numpy as np
import pytest

from uaexplain import TrainConfig, generate_synthetic, train_pipeline


@pytest.fixture(scope="session")
def synth400():
    return generate_synthetic(400, seed=42)


@pytest.fixture(scope="session")
def trained_small(synth400):
    """A quick dropout model shared by explanation and monitoring tests."""
    return train_pipeline(synth400, hidden=(16,), dropout_rate=0.2,
                          train_cfg=TrainConfig(epochs=60, seed=7), T=20, seed=7)
