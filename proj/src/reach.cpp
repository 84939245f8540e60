#include "vreach/reach.hpp"

#include <algorithm>

#include "vreach/errors.hpp"
#include "vreach/executor.hpp"
#include "vreach/orthant.hpp"
#include "vreach/skeleton.hpp"

namespace vreach {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::apnm:
      return "apnm";
    case Algorithm::epnm:
      return "epnm";
    case Algorithm::papnm:
      return "papnm";
  }
  return "unknown";
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "apnm") return Algorithm::apnm;
  if (name == "epnm") return Algorithm::epnm;
  if (name == "papnm") return Algorithm::papnm;
  throw ContractViolation("reach.algorithm", "unknown algorithm '" + name + "'");
}

namespace {

constexpr std::size_t kMergeAll = std::numeric_limits<std::size_t>::max();

bool same_single_point(const VertexSet& a, const VertexSet& b, double tol) {
  return a.size() == 1 && b.size() == 1 && (a.point(0) - b.point(0)).norm() <= tol;
}

// Image of one branch under a hidden layer's affine map, cut into the sets
// that continue to the next layer.
std::vector<VertexSet> map_hidden_layer(const VertexSet& branch, const LayerParams& layer,
                                        std::size_t group_size, const ReachOptions& options,
                                        Executor& executor) {
  // EI needs extreme points; the affine image of extreme points need not be.
  const VertexSet image = reduce_to_vertices(affine_map(branch, layer), options.tol, executor);

  if (options.split == SplitStrategy::simultaneous && group_size == kMergeAll) {
    const EdgeSkeleton edges = identify_edges(image, options.tol.lp, executor);
    return {intersect_edges(image, edges, options.tol.sign)};
  }

  const OrthantPartition parts =
      options.split == SplitStrategy::sequential
          ? split_by_orthant(image, options.tol, executor)
          : split_simultaneous(image, options.tol, executor, options.max_placements);
  std::vector<VertexSet> ordered;
  ordered.reserve(parts.size());
  for (const auto& [key, part] : parts) ordered.push_back(part);
  if (group_size == 1) return ordered;
  return merge_sets(ordered, std::min(group_size, std::max<std::size_t>(1, ordered.size())));
}

ReachSet propagate(const VertexSet& input, const Network& net, std::size_t group_size,
                   const ReachOptions& options, Executor& executor) {
  if (input.empty()) throw ContractViolation("reach", "input vertex set is empty");
  if (input.dim() != net.input_dim()) {
    throw ContractViolation("reach", "input dimension " + std::to_string(input.dim()) +
                                         " != network input dimension " +
                                         std::to_string(net.input_dim()));
  }

  ReachSet result;
  std::vector<VertexSet> branches{dedup_vertices(input, options.tol.dedup)};
  const std::size_t layers = net.layer_count();
  try {
    for (std::size_t l = 0; l < layers; ++l) {
      if (l > 0) {
        executor.checkpoint();
        std::vector<VertexSet> entered(branches.size());
        executor.parallel_for(branches.size(), [&](std::size_t b) {
          executor.checkpoint();
          entered[b] = reduce_to_vertices(relu_map(branches[b]), options.tol, executor);
        });
        // Negative-orthant parts all collapse onto the same point.
        std::vector<VertexSet> kept;
        for (auto& e : entered) {
          const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const VertexSet& k) {
            return same_single_point(k, e, options.tol.dedup);
          });
          if (!duplicate) kept.push_back(std::move(e));
        }
        branches = std::move(kept);
      }

      LayerStats stats;
      stats.layer = l + 1;
      stats.sets_in = branches.size();
      for (const auto& b : branches) stats.vertices_in += b.size();
      result.layers.push_back(stats);

      const LayerParams& layer = net.layer(l);
      std::vector<std::vector<VertexSet>> produced(branches.size());
      const bool last = l + 1 == layers;
      executor.parallel_for(branches.size(), [&](std::size_t b) {
        executor.checkpoint();
        if (last) {
          produced[b] = {affine_map(branches[b], layer)};
        } else {
          produced[b] = map_hidden_layer(branches[b], layer, group_size, options, executor);
        }
      });

      std::vector<VertexSet> next;
      for (auto& group : produced) {
        for (auto& s : group) next.push_back(std::move(s));
      }
      if (next.size() > options.max_branches) {
        throw LimitExceeded("reach", "layer " + std::to_string(l + 1) + " produced " +
                                         std::to_string(next.size()) + " branches (cap " +
                                         std::to_string(options.max_branches) + ")");
      }
      branches = std::move(next);
      result.layers.back().sets_out = branches.size();
    }

    std::vector<VertexSet> final_sets(branches.size());
    executor.parallel_for(branches.size(), [&](std::size_t b) {
      executor.checkpoint();
      final_sets[b] = reduce_to_vertices(branches[b], options.tol, executor);
    });
    result.polytopes = std::move(final_sets);
  } catch (const Cancelled&) {
    result.complete = false;
    result.polytopes.clear();
  }
  return result;
}

}  // namespace

ReachSet apnm(const VertexSet& input, const Network& net, const ReachOptions& options,
              Executor& executor) {
  return propagate(input, net, kMergeAll, options, executor);
}

ReachSet apnm(const VertexSet& input, const Network& net, const ReachOptions& options) {
  Executor executor(1);
  return apnm(input, net, options, executor);
}

ReachSet epnm(const VertexSet& input, const Network& net, const ReachOptions& options,
              Executor& executor) {
  return propagate(input, net, 1, options, executor);
}

ReachSet epnm(const VertexSet& input, const Network& net, const ReachOptions& options) {
  Executor executor(1);
  return epnm(input, net, options, executor);
}

ReachSet papnm(const VertexSet& input, const Network& net, std::size_t d,
               const ReachOptions& options, Executor& executor) {
  if (d == 0) throw ContractViolation("reach.papnm", "merge size must be >= 1");
  return propagate(input, net, d, options, executor);
}

ReachSet papnm(const VertexSet& input, const Network& net, std::size_t d,
               const ReachOptions& options) {
  Executor executor(1);
  return papnm(input, net, d, options, executor);
}

ReachSet reach(Algorithm algorithm, const VertexSet& input, const Network& net,
               std::size_t merge_size, const ReachOptions& options, Executor& executor) {
  switch (algorithm) {
    case Algorithm::apnm:
      return apnm(input, net, options, executor);
    case Algorithm::epnm:
      return epnm(input, net, options, executor);
    case Algorithm::papnm:
      return papnm(input, net, merge_size, options, executor);
  }
  throw ContractViolation("reach", "unknown algorithm");
}

}  // namespace vreach
