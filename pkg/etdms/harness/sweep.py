"""
Worker threads for independent runs of a parameter sweep.
"""

import logging
import queue
import threading


class SweepRunner:
    """
    Runs independent jobs on a pool of daemon worker threads.

    Jobs are pulled from a shared queue; results are keyed by job index so the
    caller sees them in submission order regardless of completion order.
    """

    def __init__(self, job_fn, workers=1, on_result=None):
        """
        Initialize the runner.

        Args:
            job_fn: Callable run on each job's arguments
            workers: Number of worker threads
            on_result: Optional callback receiving (index, result) as jobs finish
        """
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        self.job_fn = job_fn
        self.workers = workers
        self.on_result = on_result
        self.job_queue = queue.Queue()
        self.results = {}
        self.errors = {}
        self._lock = threading.Lock()

    def _worker_loop(self):
        while True:
            try:
                index, job = self.job_queue.get_nowait()
            except queue.Empty:
                return
            try:
                result = self.job_fn(job)
                with self._lock:
                    self.results[index] = result
                if self.on_result:
                    self.on_result(index, result)
            except Exception as e:
                logging.error(f"Sweep job {index} failed: {e}")
                with self._lock:
                    self.errors[index] = e
            finally:
                self.job_queue.task_done()

    def run(self, jobs):
        """
        Run all jobs and wait for them.

        Args:
            jobs: Sequence of job arguments

        Returns:
            list: Results in job order

        Raises:
            Exception: The error of the first failed job, after all jobs finished
        """
        jobs = list(jobs)
        for index, job in enumerate(jobs):
            self.job_queue.put((index, job))

        threads = []
        for _ in range(min(self.workers, len(jobs))):
            thread = threading.Thread(target=self._worker_loop)
            thread.daemon = True
            thread.start()
            threads.append(thread)
        for thread in threads:
            thread.join()

        if self.errors:
            raise self.errors[min(self.errors)]
        return [self.results[index] for index in range(len(jobs))]
