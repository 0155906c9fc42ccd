// SPDX-License-Identifier: Apache-2.0
//
// irrarray - simulation and optimization toolkit for irregular phased arrays
// Copyright (C) 2026 The irrarray authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef irrarray_errors_H
#define irrarray_errors_H

#include <stdexcept>
#include <string>

namespace irrarray
{
    // Effective channel matrix is numerically singular; callers skip the
    // realization and record it instead of aborting the whole run.
    class degenerate_channel_error : public std::runtime_error
    {
    public:
        explicit degenerate_channel_error(const std::string &msg) : std::runtime_error(msg) {}
    };

    // Sidelobe mask leaves no angular grid point to evaluate.
    class degenerate_mask_error : public std::runtime_error
    {
    public:
        explicit degenerate_mask_error(const std::string &msg) : std::runtime_error(msg) {}
    };
}

#endif
