// Copyright 2026 The hhllab developers
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

#pragma once

#include <stdexcept>
#include <string>

namespace hhllab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define HHLLAB_DEFINE_ERROR(Name)                                \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(what) {}      \
  }

// linalg
HHLLAB_DEFINE_ERROR(NonHermitianInput);
HHLLAB_DEFINE_ERROR(NoConvergence);
HHLLAB_DEFINE_ERROR(NonSquareInput);
HHLLAB_DEFINE_ERROR(SingularMatrix);
HHLLAB_DEFINE_ERROR(NotPositiveDefinite);
HHLLAB_DEFINE_ERROR(MaxIterationsExceeded);
HHLLAB_DEFINE_ERROR(DimensionMismatch);

// circuit
HHLLAB_DEFINE_ERROR(IndexOutOfRange);
HHLLAB_DEFINE_ERROR(ArityMismatch);
HHLLAB_DEFINE_ERROR(DuplicateTarget);
HHLLAB_DEFINE_ERROR(NotUnitary);
HHLLAB_DEFINE_ERROR(ContainsMeasurement);
HHLLAB_DEFINE_ERROR(TooLarge);

// statevector
HHLLAB_DEFINE_ERROR(EmptyMeasurementSet);
HHLLAB_DEFINE_ERROR(ZeroProbabilityBranch);

// qft / qpe
HHLLAB_DEFINE_ERROR(SpecInconsistent);

// hhl
HHLLAB_DEFINE_ERROR(ZeroRHS);
HHLLAB_DEFINE_ERROR(NotNormalized);
HHLLAB_DEFINE_ERROR(NotPowerOfTwo);
HHLLAB_DEFINE_ERROR(InvalidC);
HHLLAB_DEFINE_ERROR(PostselectionFailed);

// noise
HHLLAB_DEFINE_ERROR(UnphysicalModel);

// bench / cli
HHLLAB_DEFINE_ERROR(InvalidParameter);
HHLLAB_DEFINE_ERROR(ParseError);

#undef HHLLAB_DEFINE_ERROR

}  // namespace hhllab
