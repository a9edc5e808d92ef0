"""deskvla: a desk-scale vision-language-action policy and its tabletop testbed."""

__version__ = "0.1.0"
