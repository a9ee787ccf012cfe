//
// Copyright 2026 The ldpvote Authors
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
//

#ifndef LDPVOTE_IO_HPP_
#define LDPVOTE_IO_HPP_

#include <string>

namespace ldpvote {

// Shortest round-trip decimal form, identical across runs. Infinities are
// written as "inf"/"-inf".
std::string format_double(double value);

}  // namespace ldpvote

#endif  // LDPVOTE_IO_HPP_
