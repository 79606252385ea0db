#!/usr/bin/env node
// SPDX-License-Identifier: Apache-2.0
// Print the 0-based line numbers of JSONL records whose "code" is not a valid script.
// Usage: check_syntax.js CORPUS.jsonl
'use strict';
const fs = require('fs');
const vm = require('vm');

const lines = fs.readFileSync(process.argv[2], 'utf8').split('\n');
lines.forEach((line, i) => {
  if (!line.trim()) return;
  try {
    new vm.Script(JSON.parse(line).code);
  } catch (e) {
    if (e instanceof SyntaxError) console.log(i);
    else throw e;
  }
});
