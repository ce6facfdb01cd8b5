// Copyright 2026 The qngcoh Authors
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

#ifndef QNG_ERROR_HPP
#define QNG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qng {

enum class ErrorCode {
    InvalidArgument,
    UnsupportedOrder,
    Range,
    Truncation,
    NotConverged,
    Fit,
    Conditioning,
    Config,
    Io,
};

const char *error_code_name(ErrorCode code);

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message) : std::runtime_error(message), code_(code) {
    }
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}

inline void require(bool condition, const std::string &message) {
    if (!condition) {
        throw Error(ErrorCode::InvalidArgument, message);
    }
}

}  // namespace qng

#endif
