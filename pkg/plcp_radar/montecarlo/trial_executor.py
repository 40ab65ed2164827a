import pickle as pickle
from multiprocessing import Process, Pipe


class IterativeTrialExecutor(object):
    """
    Runs the trial partitions of a Monte Carlo task one after the other in the calling process.

    Args:
        task (plcp_radar.montecarlo.base.TrialTask): task evaluated in every trial
        n_partitions (int): number of trial partitions, each with its own child seed
    """

    def __init__(self, task, n_partitions):
        self.task = task
        self.n_partitions = n_partitions

    def run(self, trials_per_partition, seeds, pbar=None):
        """
        Args:
            trials_per_partition (list): number of trials of each partition
            seeds (list): np.random.SeedSequence of each partition
            pbar (pyprind.ProgBar): updated once per finished partition

        Returns:
            (list): per-partition arrays of trial outcomes, in partition order
        """
        assert len(trials_per_partition) == len(seeds) == self.n_partitions
        results = []
        for n, seed in zip(trials_per_partition, seeds):
            results.append(self.task.run_trials(n, seed))
            if pbar is not None:
                pbar.update()
        return results

    def close(self):
        pass


class ParallelTrialExecutor(object):
    """
    Runs the trial partitions of a Monte Carlo task in n_partitions worker processes. Each partition
    uses the same child seed as in IterativeTrialExecutor, so both give identical outcomes.

    Args:
        task (plcp_radar.montecarlo.base.TrialTask): picklable task evaluated in every trial
        n_partitions (int): number of worker processes
    """

    def __init__(self, task, n_partitions):
        self.n_partitions = n_partitions
        self.remotes, self.work_remotes = zip(*[Pipe() for _ in range(n_partitions)])

        self.ps = [
            Process(target=worker, args=(work_remote, remote, pickle.dumps(task)))
            for (work_remote, remote) in zip(self.work_remotes, self.remotes)]

        for p in self.ps:
            p.daemon = True  # if the main process crashes, we should not cause things to hang
            p.start()
        for remote in self.work_remotes:
            remote.close()

    def run(self, trials_per_partition, seeds):
        assert len(trials_per_partition) == len(seeds) == self.n_partitions
        for remote, n, seed in zip(self.remotes, trials_per_partition, seeds):
            remote.send(('run', (n, seed)))

        results = [remote.recv() for remote in self.remotes]
        for result in results:
            if isinstance(result, Exception):
                raise result
        return results

    def close(self):
        for remote in self.remotes:
            remote.send(('close', None))
        for p in self.ps:
            p.join()


def worker(remote, parent_remote, task_pickle):
    """
    Parallel worker evaluating trial partitions. It loops continually checking the command the remote sends to it.

    Args:
        remote (multiprocessing.Connection):
        parent_remote (multiprocessing.Connection):
        task_pickle (pkl): pickled task
    """
    parent_remote.close()

    task = pickle.loads(task_pickle)

    while True:
        cmd, data = remote.recv()

        # evaluate a partition of trials with its own seed
        if cmd == 'run':
            n_trials, seed = data
            try:
                remote.send(task.run_trials(n_trials, seed))
            except Exception as e:
                remote.send(e)

        # close the remote and stop the worker
        elif cmd == 'close':
            remote.close()
            break

        else:
            raise NotImplementedError
