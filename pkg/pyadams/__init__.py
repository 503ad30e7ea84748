# @warn importing the engine here would load sympy on every `import pyadams`
#
# from .common_module import *
# from .common_periodic import *
