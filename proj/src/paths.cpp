#include "linklab/paths.hpp"

#include <unordered_set>

#include "linklab/errors.hpp"

namespace linklab {

static std::string vertex_word(int v) {
    return "vertex " + std::to_string(v);
}

ValidationResult validate_path_system(const Graph& g,
                                      const std::vector<std::pair<int, int>>& pairs,
                                      const std::vector<std::vector<int>>& paths) {
    if (paths.size() != pairs.size())
        return {false, "expected " + std::to_string(pairs.size()) + " paths, got " +
                           std::to_string(paths.size())};
    std::unordered_set<int> used;
    for (size_t i = 0; i < paths.size(); ++i) {
        const auto& path = paths[i];
        const std::string label = "path " + std::to_string(i);
        if (path.empty())
            return {false, label + " is empty"};
        for (int v : path)
            if (v < 0 || v >= g.size())
                return {false, label + " contains out-of-range " + vertex_word(v)};
        if (path.front() != pairs[i].first || path.back() != pairs[i].second)
            return {false, label + " endpoint mismatch"};
        for (size_t j = 0; j + 1 < path.size(); ++j)
            if (!g.adjacent(path[j], path[j + 1]))
                return {false, label + " uses non-edge (" + std::to_string(path[j]) + ", " +
                                   std::to_string(path[j + 1]) + ")"};
        for (int v : path) {
            if (!used.insert(v).second)
                return {false, vertex_word(v) + " reused"};
        }
    }
    return {true, ""};
}

std::vector<int> truncate_path(const std::vector<int>& path,
                               const std::function<bool(int)>& accept) {
    for (size_t i = 0; i < path.size(); ++i)
        if (accept(path[i]))
            return std::vector<int>(path.begin(), path.begin() + static_cast<long>(i) + 1);
    throw not_found("truncate_path: no vertex satisfies the predicate");
}

} // namespace linklab
