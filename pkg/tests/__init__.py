"""Test suite for the LBNN Workbench."""
