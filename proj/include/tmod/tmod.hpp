/*
   Copyright 2026 The tmod Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef TMOD_TMOD_HPP
#define TMOD_TMOD_HPP

#include "gf.hpp"
#include "poly.hpp"
#include "laurent.hpp"
#include "matrix.hpp"
#include "apoly.hpp"
#include "grpring.hpp"
#include "modsize.hpp"
#include "tmodule.hpp"
#include "fields.hpp"
#include "lvalue.hpp"
#include "nuclear.hpp"
#include "volume.hpp"

#endif
