from plcp_radar.montecarlo.plcp_sampler import sample_realization
from plcp_radar.montecarlo.trial_executor import IterativeTrialExecutor, ParallelTrialExecutor
from plcp_radar.utils import utils, logger

from pyprind import ProgBar
import numpy as np
import time


class TrialTask(object):
    """
    Monte Carlo task interface: samples one realization of the street network per trial
    and maps it to a vector of outcomes

    Args:
        net (NetworkParams) : intensities and interferer model
        window (SimulationWindow) : sampling window
        sigma_bar (float) : mean radar cross-section of the target in m^2
    """
    outcome_names = ()

    def __init__(self, net, window, sigma_bar=1.0):
        self.net = net
        self.window = window
        self.sigma_bar = sigma_bar

    def evaluate(self, realization):
        """
        Args:
            realization (PlcpRealization) : one sample

        Returns:
            (tuple) : outcomes of the trial, one per outcome name
        """
        raise NotImplementedError

    def run_trials(self, n_trials, seed):
        """
        Args:
            n_trials (int) : number of trials
            seed (np.random.SeedSequence) : seed of this partition

        Returns:
            (np.ndarray) : outcomes of shape (n_trials, len(outcome_names))
        """
        rng = np.random.default_rng(seed)
        outcomes = np.empty((n_trials, len(self.outcome_names)))
        for i in range(n_trials):
            outcomes[i] = self.evaluate(sample_realization(self.net, self.window, rng, self.sigma_bar))
        return outcomes


class MonteCarloSampler(object):
    """
    Splits the trials of a task into seeded partitions and collects their outcomes

    Args:
        task (TrialTask) : task to evaluate
        n_partitions (int) : number of partitions, each seeded with a child of the base seed
        parallel (bool) : run the partitions in worker processes
        verbose (bool) : show a progress bar over the partitions
    """

    def __init__(self, task, n_partitions=1, parallel=False, verbose=False):
        assert n_partitions >= 1, 'need at least one partition'
        self.task = task
        self.n_partitions = n_partitions
        self.parallel = parallel
        self.verbose = verbose

    def obtain_samples(self, trials, seed, log=False, log_prefix=''):
        """
        Args:
            trials (int) : total number of trials, >= 1
            seed (int) : base seed
            log (boolean) : whether to log the sampling time
            log_prefix (str) : prefix for logger

        Returns:
            (np.ndarray) : outcomes of shape (trials, len(task.outcome_names)), in partition order
        """
        if trials < 1:
            raise ValueError('trials must be >= 1, got %s' % trials)
        seeds = utils.spawn_seeds(seed, self.n_partitions)
        trials_per_partition = utils.split_trials(trials, self.n_partitions)

        t = time.time()
        if self.parallel:
            executor = ParallelTrialExecutor(self.task, self.n_partitions)
            try:
                results = executor.run(trials_per_partition, seeds)
            finally:
                executor.close()
        else:
            executor = IterativeTrialExecutor(self.task, self.n_partitions)
            pbar = ProgBar(self.n_partitions) if self.verbose else None
            results = executor.run(trials_per_partition, seeds, pbar=pbar)
            if pbar is not None:
                pbar.stop()

        if log:
            logger.logkv(log_prefix + 'SampleTime', time.time() - t)
        return np.concatenate(results, axis=0)
