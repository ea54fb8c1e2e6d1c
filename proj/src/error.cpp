// Copyright 2026 The qmarkov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmarkov/error.hpp"

namespace qmarkov {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::NotPSD: return "NotPSD";
        case ErrorKind::NotSelfAdjoint: return "NotSelfAdjoint";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::Singular: return "Singular";
        case ErrorKind::InvalidState: return "InvalidState";
        case ErrorKind::PullbackNotPSD: return "PullbackNotPSD";
        case ErrorKind::SupportNotFull: return "SupportNotFull";
        case ErrorKind::NotCommutative: return "NotCommutative";
        case ErrorKind::NotAeDeterministic: return "NotAeDeterministic";
        case ErrorKind::NonscalarImageBlock: return "NonscalarImageBlock";
        case ErrorKind::PreconditionsUnmet: return "PreconditionsUnmet";
        case ErrorKind::UnknownFixture: return "UnknownFixture";
    }
    return "Unknown";
}

}  // namespace qmarkov
