"""
Package de configuration du moteur de Schubert.
"""
