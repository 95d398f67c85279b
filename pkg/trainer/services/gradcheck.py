"""Finite-difference verification of the analytic gradients."""
import logging
import random
from contextlib import contextmanager
from dataclasses import dataclass, field

import torch

logger = logging.getLogger(__name__)

ERROR_FLOOR = 1e-4


@dataclass
class GradCheckReport:
    worst: float = 0.0
    per_tensor: dict = field(default_factory=dict)
    coordinates: dict = field(default_factory=dict)

    def rows(self):
        return [{'tensor': name, 'coordinates': self.coordinates[name], 'relative_error': error}
                for name, error in self.per_tensor.items()]


def relative_error(analytic, numeric):
    return abs(analytic - numeric) / max(abs(analytic), abs(numeric), ERROR_FLOOR)


@contextmanager
def smooth_activation(model):
    """Swap the graph network's ReLU for tanh for the duration of the block."""
    hgnn = getattr(model, 'hgnn', None)
    previous = hgnn.activation if hgnn is not None else None
    if hgnn is not None:
        hgnn.activation = 'tanh'
    try:
        yield model
    finally:
        if hgnn is not None:
            hgnn.activation = previous


def sample_coordinates(numel, samples, rng):
    if samples is None or numel <= samples:
        return list(range(numel))
    return sorted(rng.sample(range(numel), samples))


def grad_check(model, batch, epsilon=1e-4, samples=20, seed=0, smooth=True):
    """Worst relative error between autograd and central differences over every parameter tensor.

    Large tensors are checked on a seeded sample of coordinates. The loss is
    the batch mean negative log-likelihood.
    """
    rng = random.Random(seed)
    report = GradCheckReport()
    with smooth_activation(model) if smooth else _unchanged(model):
        model.zero_grad()
        model.loss(batch).backward()
        analytic = {name: (p.grad.detach().clone() if p.grad is not None else torch.zeros_like(p))
                    for name, p in model.named_parameters()}
        with torch.no_grad():
            for name, parameter in model.named_parameters():
                flat = parameter.view(-1)
                worst = 0.0
                coordinates = sample_coordinates(flat.numel(), samples, rng)
                for index in coordinates:
                    original = flat[index].item()
                    flat[index] = original + epsilon
                    upper = model.loss(batch).item()
                    flat[index] = original - epsilon
                    lower = model.loss(batch).item()
                    flat[index] = original
                    numeric = (upper - lower) / (2 * epsilon)
                    worst = max(worst, relative_error(analytic[name].view(-1)[index].item(), numeric))
                report.per_tensor[name] = worst
                report.coordinates[name] = len(coordinates)
                report.worst = max(report.worst, worst)
        model.zero_grad()
    logger.info('gradient check: worst relative error %.3e over %d tensors', report.worst, len(report.per_tensor))
    return report


@contextmanager
def _unchanged(model):
    yield model
