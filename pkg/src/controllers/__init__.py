"""
Package de contrôleurs du moteur de Schubert.
"""
