// Copyright 2026 The popdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Weight checkpoints for Mlp<double>.
//
// Layout (all integers u32, all reals IEEE-754 f64, little-endian):
//   "PDQN" | version=1 | activation (0 relu, 1 identity) | n | n layer sizes
//   then for each layer l: weight (rows = sizes[l+1], row-major), bias.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <vector>

#include "popdp/agent/mlp.hpp"
#include "popdp/error.hpp"

namespace popdp::agent {

namespace detail {

template <class T>
void write_le(std::ostream& os, T value) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(bytes.begin(), bytes.end());
  os.write(bytes.data(), sizeof(T));
}

template <class T>
T read_le(std::istream& is) {
  std::array<char, sizeof(T)> bytes;
  if (!is.read(bytes.data(), sizeof(T))) throw InputError("truncated checkpoint");
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

inline constexpr std::array<char, 4> kCheckpointMagic{'P', 'D', 'Q', 'N'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

}  // namespace detail

inline void save_checkpoint(std::ostream& os, const Mlp<double>& net) {
  os.write(detail::kCheckpointMagic.data(), 4);
  detail::write_le<std::uint32_t>(os, detail::kCheckpointVersion);
  detail::write_le<std::uint32_t>(os, net.hidden_activation() == Activation::kRelu ? 0u : 1u);
  detail::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(net.sizes().size()));
  for (auto s : net.sizes()) detail::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(s));
  for (const auto& layer : net.layers()) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c)
        detail::write_le<double>(os, layer.weight(r, c));
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) detail::write_le<double>(os, layer.bias(r));
  }
  if (!os) throw Error("failed to write checkpoint");
}

inline Mlp<double> load_checkpoint(std::istream& is) {
  std::array<char, 4> magic;
  if (!is.read(magic.data(), 4) || magic != detail::kCheckpointMagic)
    throw InputError("not a checkpoint file");
  if (detail::read_le<std::uint32_t>(is) != detail::kCheckpointVersion)
    throw InputError("unsupported checkpoint version");
  const auto act = detail::read_le<std::uint32_t>(is);
  if (act > 1) throw InputError("unknown activation in checkpoint");
  const auto n = detail::read_le<std::uint32_t>(is);
  if (n < 2) throw InputError("checkpoint needs at least two layer sizes");
  std::vector<std::size_t> sizes(n);
  for (auto& s : sizes) s = detail::read_le<std::uint32_t>(is);

  std::vector<Mlp<double>::Layer> layers;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const auto rows = static_cast<Eigen::Index>(sizes[l + 1]);
    const auto cols = static_cast<Eigen::Index>(sizes[l]);
    Mlp<double>::Layer layer{Mlp<double>::Matrix(rows, cols), Mlp<double>::Vector(rows)};
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) layer.weight(r, c) = detail::read_le<double>(is);
    for (Eigen::Index r = 0; r < rows; ++r) layer.bias(r) = detail::read_le<double>(is);
    layers.push_back(std::move(layer));
  }
  return Mlp<double>(std::move(sizes), act == 0 ? Activation::kRelu : Activation::kIdentity,
                     std::move(layers));
}

}  // namespace popdp::agent
