"""
Module utils - Contient des fonctions utilitaires

- Analyse des arguments de ligne de commande
- Initialisation du logger
- Décorateurs (codes de sortie, chronométrage)
"""
