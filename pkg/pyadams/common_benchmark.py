import sys
import time


##
class Timed:
    """
    Context manager measuring wall time.

    With `print_p`, the duration is printed to stderr (never to stdout, which
    carries reports). With `output_dict`, it is stored under the key "time".
    """

    def __init__(self, name="", enabled_p=True, print_p=True, output_dict=None):
        self.name = name
        self.enabled = enabled_p
        self.print_p = print_p
        self.output_dict = output_dict
        self.time_taken = None

    def __enter__(self):
        if self.enabled:
            self.start = time.perf_counter()
        return self

    def __exit__(self, type, value, traceback):
        if self.enabled:
            end = time.perf_counter()

            self.time_taken = end - self.start
            if self.output_dict is not None:
                self.output_dict["time"] = self.time_taken

            if self.print_p:
                print(
                    f"\nTime: {self.name}: {self.time_taken} seconds",
                    flush=True,
                    file=sys.stderr,
                )


##
