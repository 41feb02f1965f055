// Copyright 2026 The rrcstego Authors
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

#pragma once

#include "rrcstego/bits.hpp"
#include "rrcstego/codec.hpp"
#include "rrcstego/codec_rrc.hpp"
#include "rrcstego/codec_vanilla.hpp"
#include "rrcstego/descriptor.hpp"
#include "rrcstego/error.hpp"
#include "rrcstego/exact.hpp"
#include "rrcstego/keystream.hpp"
#include "rrcstego/metrics.hpp"
#include "rrcstego/ngram.hpp"
#include "rrcstego/provider.hpp"
#include "rrcstego/remote_provider.hpp"
#include "rrcstego/session.hpp"
#include "rrcstego/stegotext.hpp"
#include "rrcstego/table_provider.hpp"
#include "rrcstego/wire.hpp"
