import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import numpy as np

# fixed element ids, so that identical data gives identical svg files
matplotlib.rcParams['svg.hashsalt'] = 'plcp-radar'


def line_chart(path, curves, xlabel, ylabel, title=None):
    """
    Writes a line chart as svg

    Args:
        path (str): output file
        curves (list): (label, x, y) per curve
        xlabel (str): abscissa label with unit
        ylabel (str): ordinate label with unit

    Returns:
        (str): path
    """
    assert curves, 'no curves to plot'
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, x, y in curves:
        ax.plot(np.asarray(x, dtype=float), np.asarray(y, dtype=float), marker='o', markersize=3, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize='small')
    fig.tight_layout()
    fig.savefig(path, format='svg', metadata={'Date': None})
    plt.close(fig)
    return path
