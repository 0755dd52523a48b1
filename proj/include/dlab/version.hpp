// Copyright 2026 the dlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#define DLAB_VERSION_STRING "0.1.0"
#define DLAB_REPORT_SCHEMA_VERSION 1
