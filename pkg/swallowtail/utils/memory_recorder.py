"""Peak memory and runtime of a function call."""

__all__ = ["record_max_memory"]

import time
from threading import Thread

import psutil


def record_max_memory(
    function,
    args=None,
    kwargs=None,
    interval=0.1,
    return_func_time=False,
    return_result=False,
):
    """
    Record the peak resident memory growth while a function runs.

    The function runs in a worker thread and the resident set size of the process is
    sampled every ``interval`` seconds until the thread finishes.

    Parameters
    ----------
    function : callable
        The function to run.
    args : list, default=None
        Positional arguments for the function.
    kwargs : dict, default=None
        Keyword arguments for the function.
    interval : float, default=0.1
        Sampling interval in seconds.
    return_func_time : bool, default=False
        Whether to also return the runtime of the function.
    return_result : bool, default=False
        Whether to also return the value returned by the function.

    Returns
    -------
    max_memory : int
        Peak memory above the starting resident set size, in bytes.
    runtime : int, optional
        Runtime of the function in milliseconds.
    result : object, optional
        The return value of the function.

    Examples
    --------
    >>> def f(n):
    ...     return sum(range(n))
    >>> mem, total = record_max_memory(f, args=[10000], return_result=True)
    >>> total
    49995000
    """
    process = psutil.Process()
    start_memory = process.memory_info().rss

    thread = _FunctionThread(function, args, kwargs)
    thread.start()

    max_memory = process.memory_info().rss
    while thread.is_alive():
        thread.join(timeout=interval)
        max_memory = max(max_memory, process.memory_info().rss)

    if thread.exception is not None:
        raise thread.exception

    out = [max(max_memory - start_memory, 0)]
    if return_func_time:
        out.append(thread.function_time)
    if return_result:
        out.append(thread.result)
    return out[0] if len(out) == 1 else tuple(out)


class _FunctionThread(Thread):
    """Thread that runs a function and keeps its result, runtime and exception."""

    def __init__(self, function, args=None, kwargs=None):
        self.function = function
        self.args = args if args is not None else []
        self.kwargs = kwargs if kwargs is not None else {}

        self.function_time = -1
        self.result = None
        self.exception = None

        super().__init__(daemon=True)

    def run(self):
        """Overloads the threading.Thread.run."""
        start = int(round(time.time() * 1000))
        try:
            self.result = self.function(*self.args, **self.kwargs)
        except Exception as e:
            self.exception = e
        end = int(round(time.time() * 1000))
        self.function_time = end - start
