// SPDX-License-Identifier: Apache-2.0
//
// fr3chan - large-scale channel statistics toolkit for FR3 outdoor scenarios
// Copyright (C) 2026 fr3chan contributors
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

#ifndef fr3chan_fr3chan_H
#define fr3chan_fr3chan_H

#include "fr3chan/csv.hpp"
#include "fr3chan/estimators.hpp"
#include "fr3chan/linalg.hpp"
#include "fr3chan/lsp.hpp"
#include "fr3chan/padp.hpp"
#include "fr3chan/padp_synth.hpp"
#include "fr3chan/pathloss.hpp"
#include "fr3chan/pipeline.hpp"
#include "fr3chan/random.hpp"
#include "fr3chan/registry.hpp"
#include "fr3chan/registry_io.hpp"
#include "fr3chan/types.hpp"

#endif
