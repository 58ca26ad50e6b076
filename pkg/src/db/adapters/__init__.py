"""
Package d'adaptateurs de stockage du moteur de Schubert.
"""
