import matplotlib

matplotlib.use('Agg')

import matplotlib.pyplot as plt  # noqa: E402


def plot_sweep(points, path):
    """R_oov and F1 against the kept share of the n-gram vocabulary."""
    fractions = [point.fraction for point in points]
    figure, axis = plt.subplots(figsize=(5, 3.5))
    axis.plot(fractions, [point.oov_recall for point in points], marker='o', label='R_oov')
    axis.plot(fractions, [point.f1 for point in points], marker='s', linestyle='--', label='F1')
    axis.set_xlabel('fraction of n-gram vocabulary')
    axis.set_ylabel('score')
    axis.set_xlim(0, 1.05)
    axis.legend()
    axis.grid(alpha=0.3)
    figure.tight_layout()
    figure.savefig(path)
    plt.close(figure)
    return path
