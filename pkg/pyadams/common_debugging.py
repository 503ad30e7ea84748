import inspect
import os
import sys
import traceback


debug_p = bool(os.environ.get("DEBUGME", None))


def traceback_print(file=None):
    print(traceback.format_exc(), file=(file or sys.stderr), flush=True)


##
def fn_name_current(back=1):
    frame = inspect.currentframe()
    for _ in range(back):
        frame = frame.f_back
    return frame.f_code.co_name

