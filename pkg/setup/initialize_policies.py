from policies.frequency import FrequencyPolicy
from policies.hyper_greedy import HyperSequenceGreedy
from policies.path_greedy import PathConstrainedGreedy
from policies.registry import PolicyRegistry
from policies.sequence_greedy import AdaptiveSequenceGreedy, SequenceGreedy

# Instantiate the policies once; they hold no per-run state
adaptive_greedy = AdaptiveSequenceGreedy()
greedy = SequenceGreedy()
frequency = FrequencyPolicy()
path_greedy = PathConstrainedGreedy()
hyper_greedy = HyperSequenceGreedy()

# Register them globally
PolicyRegistry.register("adaptive-greedy", adaptive_greedy)
PolicyRegistry.register("greedy", greedy)
PolicyRegistry.register("frequency", frequency)
PolicyRegistry.register("path-greedy", path_greedy)
PolicyRegistry.register("hyper-greedy", hyper_greedy)
