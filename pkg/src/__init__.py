"""
LBNN Workbench - Local Binary Neural Network neuroevolution toolkit
Evolves networks with local learning rules and explains them by attractor analysis.
"""

__version__ = "1.0.0"
__author__ = "LBNN Workbench Team"
