"""Computation services: traces, moments, sampling, large deviations, export"""
