// Copyright 2026 The ElectrodeNet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "electrodenet/fft.h"

#include <cmath>
#include <numbers>

#include "electrodenet/errors.h"

namespace electrodenet {

bool IsPowerOfTwo(int n) { return n > 0 && (n & (n - 1)) == 0; }

Fft::Fft(int size) : size_(size) {
  if (!IsPowerOfTwo(size)) {
    throw InvalidArgument("FFT size must be a power of two, got " + std::to_string(size));
  }
  int log2n = 0;
  while ((1 << log2n) < size) ++log2n;
  bit_reverse_.resize(size);
  for (int i = 0; i < size; ++i) {
    int r = 0;
    for (int b = 0; b < log2n; ++b) r |= ((i >> b) & 1) << (log2n - 1 - b);
    bit_reverse_[i] = r;
  }
  twiddles_.resize(size / 2);
  for (int k = 0; k < size / 2; ++k) {
    double angle = -2.0 * std::numbers::pi * k / size;
    twiddles_[k] = {std::cos(angle), std::sin(angle)};
  }
}

void Fft::Transform(std::vector<std::complex<double>>& data, bool inverse) const {
  for (int i = 0; i < size_; ++i) {
    if (i < bit_reverse_[i]) std::swap(data[i], data[bit_reverse_[i]]);
  }
  for (int len = 2; len <= size_; len <<= 1) {
    const int half = len / 2;
    const int stride = size_ / len;
    for (int start = 0; start < size_; start += len) {
      for (int j = 0; j < half; ++j) {
        std::complex<double> w = twiddles_[j * stride];
        if (inverse) w = std::conj(w);
        std::complex<double> t = w * data[start + j + half];
        data[start + j + half] = data[start + j] - t;
        data[start + j] += t;
      }
    }
  }
}

std::vector<std::complex<double>> Fft::Forward(std::span<const std::complex<double>> input) const {
  if (static_cast<int>(input.size()) != size_) throw InvalidArgument("FFT input size mismatch");
  std::vector<std::complex<double>> data(input.begin(), input.end());
  Transform(data, false);
  return data;
}

std::vector<std::complex<double>> Fft::ForwardReal(std::span<const double> input) const {
  if (static_cast<int>(input.size()) != size_) throw InvalidArgument("FFT input size mismatch");
  std::vector<std::complex<double>> data(input.begin(), input.end());
  Transform(data, false);
  return data;
}

std::vector<std::complex<double>> Fft::Inverse(std::span<const std::complex<double>> input) const {
  if (static_cast<int>(input.size()) != size_) throw InvalidArgument("FFT input size mismatch");
  std::vector<std::complex<double>> data(input.begin(), input.end());
  Transform(data, true);
  return data;
}

}  // namespace electrodenet
