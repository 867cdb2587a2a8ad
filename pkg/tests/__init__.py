"""Test package for the contingent HTN planner"""
