"""Exact arithmetic: finite fields, number fields, univariate and bivariate polynomials."""
