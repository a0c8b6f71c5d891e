// Copyright 2026 The Burnscreen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BURNSCREEN_COMMON_STATUS_MACROS_H_
#define BURNSCREEN_COMMON_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define BURNSCREEN_STATUS_CONCAT_INNER_(a, b) a##b
#define BURNSCREEN_STATUS_CONCAT_(a, b) BURNSCREEN_STATUS_CONCAT_INNER_(a, b)

#define BURNSCREEN_RETURN_IF_ERROR(expr)        \
  do {                                          \
    ::absl::Status _burnscreen_status = (expr); \
    if (!_burnscreen_status.ok()) {             \
      return _burnscreen_status;                \
    }                                           \
  } while (0)

#define BURNSCREEN_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                      \
  if (!tmp.ok()) {                                        \
    return std::move(tmp).status();                       \
  }                                                       \
  lhs = std::move(tmp).value()

#define BURNSCREEN_ASSIGN_OR_RETURN(lhs, expr) \
  BURNSCREEN_ASSIGN_OR_RETURN_IMPL_(           \
      BURNSCREEN_STATUS_CONCAT_(_burnscreen_statusor_, __LINE__), lhs, expr)

#endif  // BURNSCREEN_COMMON_STATUS_MACROS_H_
