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

#ifndef ELECTRODENET_FFT_H_
#define ELECTRODENET_FFT_H_

#include <complex>
#include <span>
#include <vector>

namespace electrodenet {

// Iterative radix-2 decimation-in-time FFT for power-of-two sizes.
// Immutable after construction, so one plan can be shared across threads.
class Fft {
 public:
  explicit Fft(int size);

  int size() const { return size_; }

  // Full two-sided forward transform, X[k] = sum_n x[n] exp(-2 pi i k n / N).
  std::vector<std::complex<double>> Forward(std::span<const std::complex<double>> input) const;
  std::vector<std::complex<double>> ForwardReal(std::span<const double> input) const;
  // Unnormalized inverse; divide by size() for the true inverse.
  std::vector<std::complex<double>> Inverse(std::span<const std::complex<double>> input) const;

 private:
  void Transform(std::vector<std::complex<double>>& data, bool inverse) const;

  int size_;
  std::vector<int> bit_reverse_;
  std::vector<std::complex<double>> twiddles_;
};

bool IsPowerOfTwo(int n);

}  // namespace electrodenet

#endif  // ELECTRODENET_FFT_H_
