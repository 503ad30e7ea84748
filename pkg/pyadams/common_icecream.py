import os
import sys

from icecream import ic
from icecream import colorize as ic_colorize

from pyadams.common_debugging import debug_p, traceback_print


#: Reports go to stdout and must stay byte-identical, so traces go to stderr.
ic_output = sys.stderr


def jupyter_p():
    return os.environ.get("INSIDE_JUPYTER_NOTEBOOK_P", default="") == "y"


if jupyter_p():

    def _ic_print(s):
        try:
            print(s, file=ic_output, flush=True)
        except:
            traceback_print()

else:

    def _ic_print(s):
        try:
            print(ic_colorize(str(s)), file=ic_output, flush=True)
        except:
            traceback_print()


ic.configureOutput(prefix="pyadams| ", outputFunction=_ic_print)

if debug_p:
    ic.enable()
else:
    ic.disable()
