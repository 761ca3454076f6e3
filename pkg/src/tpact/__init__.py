"""Twisted partial actions of groups on Clifford semigroups and twisted modules over E-unitary semigroups."""
