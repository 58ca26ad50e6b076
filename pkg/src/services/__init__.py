"""
Package de services du moteur de Schubert.
"""
