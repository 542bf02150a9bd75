"""Constants for the Atari100k reference dataset.

The bulk of the reference scores live in ``perfasym/data/*.csv``; this module
holds the small printed tables and the method groupings used by the analysis.
"""

AGENT_METHODS = ("TWM", "IRIS", "DreamerV3", "STORM", "DIAMOND", "JEDI")
ALL_METHODS = ("Random", "Human", "SimPLE") + AGENT_METHODS
BASELINE_METHODS = ("IRIS", "TWM", "DreamerV3", "STORM")
PIXEL_METHODS = ("IRIS", "DIAMOND")
LATENT_BASELINES = ("TWM", "DreamerV3", "STORM")
AVERAGED_METHOD = "AverageAgent"
BUILTIN_NAME = "atari100k-paper"

AGENT_OPTIMAL_GAMES = (
    "Boxing", "Krull", "CrazyClimber", "Gopher", "RoadRunner", "Jamesbond", "Assault",
    "Breakout", "KungFuMaster", "Pong", "Kangaroo", "UpNDown", "Freeway",
)
HUMAN_OPTIMAL_GAMES = (
    "BankHeist", "DemonAttack", "Hero", "BattleZone", "Frostbite", "Qbert", "MsPacman",
    "Asterix", "ChopperCommand", "Amidar", "Alien", "PrivateEye", "Seaquest",
)

# Averaged-agent HNS as printed (rounded).
AVERAGED_AGENT_HNS = {
    "Boxing": 6.35, "Krull": 5.33, "CrazyClimber": 2.52, "Gopher": 1.72, "RoadRunner": 1.65,
    "Jamesbond": 1.52, "Assault": 1.36, "Breakout": 1.25, "KungFuMaster": 1.03, "Pong": 1.03,
    "Kangaroo": 0.85, "UpNDown": 0.78, "Freeway": 0.75,
    "BankHeist": 0.59, "DemonAttack": 0.31, "Hero": 0.27, "BattleZone": 0.25, "Frostbite": 0.22,
    "Qbert": 0.21, "MsPacman": 0.20, "Asterix": 0.093, "ChopperCommand": 0.088, "Amidar": 0.085,
    "Alien": 0.077, "PrivateEye": 0.032, "Seaquest": 0.014,
}

# HNS printed for the two visually bottlenecked games.
BOTTLENECK_HNS = {
    ("Breakout", "TWM"): 0.635, ("Breakout", "DreamerV3"): 1.02, ("Breakout", "STORM"): 0.493,
    ("Breakout", "IRIS"): 2.85, ("Breakout", "DIAMOND"): 4.54, ("Breakout", "JEDI"): 5.35,
    ("Assault", "TWM"): 0.886, ("Assault", "DreamerV3"): 0.931, ("Assault", "STORM"): 1.11,
    ("Assault", "IRIS"): 2.51, ("Assault", "DIAMOND"): 2.51, ("Assault", "JEDI"): 2.26,
}
