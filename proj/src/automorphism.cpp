#include "linklab/automorphism.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace linklab {
namespace {

// All permutations sigma of factor indices with sizes[sigma[i]] == sizes[i].
std::vector<std::vector<int>> size_preserving_permutations(const std::vector<int>& sizes) {
    const int t = static_cast<int>(sizes.size());
    std::vector<int> idx(t);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        for (int i = 0; i < t && ok; ++i)
            ok = sizes[idx[i]] == sizes[i];
        if (ok)
            out.push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

// Builds every product permutation obtained by applying per-factor maps and
// then permuting the factor coordinates by sigma.  maps[i] is the list of
// allowed unary maps on factor i's coordinate; sigma sends the coordinate of
// factor i to slot sigma[i] (legal because sizes match).
std::vector<Permutation> assemble(const std::vector<int>& sizes,
                                  const std::vector<std::vector<std::vector<int>>>& maps,
                                  const std::vector<std::vector<int>>& sigmas) {
    const int t = static_cast<int>(sizes.size());
    long total = 1;
    for (int s : sizes)
        total *= s;
    std::vector<long> strides(t, 1);
    for (int i = t - 2; i >= 0; --i)
        strides[i] = strides[i + 1] * sizes[i + 1];

    std::vector<Permutation> group;
    std::vector<int> choice(t, 0);
    for (;;) {
        for (const auto& sigma : sigmas) {
            Permutation perm(total);
            std::vector<int> coords(t, 0);
            for (long v = 0; v < total; ++v) {
                long image = 0;
                for (int i = 0; i < t; ++i)
                    image += static_cast<long>(maps[i][choice[i]][coords[i]]) * strides[sigma[i]];
                perm[v] = static_cast<int>(image);
                for (int i = t - 1; i >= 0; --i) {
                    if (++coords[i] < sizes[i])
                        break;
                    coords[i] = 0;
                }
            }
            group.push_back(std::move(perm));
        }
        int i = t - 1;
        while (i >= 0 && ++choice[i] == static_cast<int>(maps[i].size())) {
            choice[i] = 0;
            --i;
        }
        if (i < 0)
            break;
    }
    std::sort(group.begin(), group.end());
    group.erase(std::unique(group.begin(), group.end()), group.end());
    return group;
}

}  // namespace

std::vector<Permutation> hypercube_automorphisms(int n) {
    if (n < 0 || n > 6)
        throw std::invalid_argument("hypercube_automorphisms: dimension out of range");
    const int size = 1 << n;
    std::vector<int> bitpos(n);
    std::iota(bitpos.begin(), bitpos.end(), 0);
    std::vector<Permutation> group;
    do {
        for (int mask = 0; mask < size; ++mask) {
            Permutation perm(size);
            for (int v = 0; v < size; ++v) {
                int w = v ^ mask;
                int image = 0;
                for (int i = 0; i < n; ++i)
                    image |= ((w >> i) & 1) << bitpos[i];
                perm[v] = image;
            }
            group.push_back(std::move(perm));
        }
    } while (std::next_permutation(bitpos.begin(), bitpos.end()));
    return group;
}

std::vector<Permutation> torus_automorphisms(const std::vector<int>& sizes) {
    if (sizes.empty())
        throw std::invalid_argument("torus_automorphisms: no factors");
    for (int s : sizes)
        if (s < 3)
            throw std::invalid_argument("torus_automorphisms: cycle factors need size >= 3");
    const int t = static_cast<int>(sizes.size());
    std::vector<std::vector<std::vector<int>>> maps(t);
    for (int i = 0; i < t; ++i) {
        const int s = sizes[i];
        for (int r = 0; r < s; ++r) {
            std::vector<int> rot(s), ref(s);
            for (int c = 0; c < s; ++c) {
                rot[c] = (c + r) % s;
                ref[c] = ((r - c) % s + s) % s;
            }
            maps[i].push_back(std::move(rot));
            maps[i].push_back(std::move(ref));
        }
    }
    return assemble(sizes, maps, size_preserving_permutations(sizes));
}

std::vector<Permutation> grid_automorphisms(const std::vector<int>& sizes) {
    if (sizes.empty())
        throw std::invalid_argument("grid_automorphisms: no factors");
    for (int s : sizes)
        if (s < 1)
            throw std::invalid_argument("grid_automorphisms: path factors need size >= 1");
    const int t = static_cast<int>(sizes.size());
    std::vector<std::vector<std::vector<int>>> maps(t);
    for (int i = 0; i < t; ++i) {
        const int s = sizes[i];
        std::vector<int> id(s), ref(s);
        for (int c = 0; c < s; ++c) {
            id[c] = c;
            ref[c] = s - 1 - c;
        }
        maps[i].push_back(id);
        if (ref != id)
            maps[i].push_back(ref);
    }
    return assemble(sizes, maps, size_preserving_permutations(sizes));
}

}  // namespace linklab
