#!/usr/bin/env node
// SPDX-License-Identifier: Apache-2.0
// Sample functions from JavaScript packages as corpus JSONL.
// Usage: NODE_PATH=<dir with acorn, acorn-walk> extract_javascript.js NODE_MODULES N SEED OUT.jsonl
'use strict';
const fs = require('fs');
const path = require('path');
const acorn = require('acorn');
const acornWalk = require('acorn-walk');

const [root, n, seed, out] = [process.argv[2], Number(process.argv[3]), Number(process.argv[4]), process.argv[5]];
const PACKAGES = ['lodash', 'd3', 'express', 'axios', 'yargs', 'papaparse', 'rxjs', 'three', 'chart.js', 'echarts', 'lit', 'dotenv', 'zod', 'uplot', 'react', 'react-dom', 'typescript'];

function walk(dir, files) {
  for (const name of fs.readdirSync(dir).sort()) {
    const p = path.join(dir, name);
    const st = fs.lstatSync(p);
    if (st.isDirectory()) {
      if (name !== 'node_modules' && name !== 'test' && name !== 'tests') walk(p, files);
    } else if (/\.(c?js)$/.test(name) && !/\.min\./.test(name) && st.size < 2e6) {
      files.push(p);
    }
  }
}

function summaryOf(comment) {
  if (!comment || comment.type !== 'Block' || !comment.value.startsWith('*')) return null;
  const body = comment.value.slice(1).split('\n').map((l) => l.replace(/^\s*\*\s?/, '')).join(' ');
  const first = body.split(/@\w+/)[0].trim().replace(/\s+/g, ' ');
  return first || null;
}

function isFn(e) {
  return e && (e.type === 'FunctionExpression' || (e.type === 'ArrowFunctionExpression' && e.body.type === 'BlockStatement'));
}

function parse(text, comments) {
  for (const sourceType of ['module', 'script']) {
    comments.length = 0;
    try {
      return acorn.parse(text, { ecmaVersion: 'latest', sourceType, onComment: comments, allowHashBang: true });
    } catch (e) {
      // try the next source type
    }
  }
  return null;
}

const pool = [];
const files = [];
for (const pkg of PACKAGES) {
  const dir = path.join(root, pkg);
  if (fs.existsSync(dir)) walk(dir, files);
}
const seen = new Set();
for (const file of files) {
  const text = fs.readFileSync(file, 'utf8');
  const comments = [];
  const tree = parse(text, comments);
  if (!tree) continue;
  const byEnd = new Map(comments.map((c) => [c.end, c]));
  const leading = (start) => {
    let p = start;
    while (p > 0 && /\s/.test(text[p - 1])) p--;
    return byEnd.get(p);
  };
  acornWalk.full(tree, (node) => {
    let name = null;
    if (node.type === 'FunctionDeclaration' && node.id) {
      name = node.id.name;
    } else if (node.type === 'ExpressionStatement' && node.expression.type === 'AssignmentExpression'
      && node.expression.operator === '=' && isFn(node.expression.right)) {
      name = text.slice(node.expression.left.start, node.expression.left.end);
    } else if (node.type === 'VariableDeclaration' && node.declarations.length === 1 && isFn(node.declarations[0].init)) {
      name = text.slice(node.declarations[0].id.start, node.declarations[0].id.end);
    }
    if (name === null) return;
    const code = text.slice(node.start, node.end);
    const summary = summaryOf(leading(node.start));
    if (summary && code.length <= 3000 && !seen.has(code)) {
      seen.add(code);
      const rel = path.relative(root, file);
      pool.push({ repo: rel.split(path.sep)[0], path: rel, func_name: name, code, docstring: summary, language: 'javascript' });
    }
  });
}

// xorshift32, seeded
let s = seed >>> 0 || 1;
const next = () => { s ^= s << 13; s >>>= 0; s ^= s >>> 17; s ^= s << 5; s >>>= 0; return s; };
const idx = pool.map((_, i) => i);
for (let i = idx.length - 1; i > 0; i--) {
  const j = next() % (i + 1);
  [idx[i], idx[j]] = [idx[j], idx[i]];
}
const picked = idx.slice(0, n).sort((a, b) => a - b);
fs.writeFileSync(out, picked.map((i) => JSON.stringify(pool[i]) + '\n').join(''));
process.stderr.write(`${pool.length} candidates, ${picked.length} written\n`);
