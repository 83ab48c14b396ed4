"""Separable and list-decoding codes for symmetric multiple-access channels.

Library + CLI toolkit: channel models, exact code-property verification with
counterexample witnesses, rate/capacity bound calculators, code constructions
and desk-scale maximal-code search.
"""

__version__ = "0.1.0"
