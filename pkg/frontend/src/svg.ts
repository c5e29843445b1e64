// Geometry -> scalable vector drawing: fit-to-extent transform and path data.

import type { Geometry } from './shp.js'

export interface Transform {
  scale: number
  tx: number
  ty: number
}

export interface Drawing {
  paths: { d: string; kind: 'polygon' | 'polyline' }[]
  dots: { cx: number; cy: number }[]
  width: number
  height: number
}

export function fitTransform(
  bbox: [number, number, number, number],
  width: number,
  height: number,
  margin = 0.05,
): Transform {
  const [x0, y0, x1, y1] = bbox
  const spanX = x1 - x0
  const spanY = y1 - y0
  const span = Math.max(spanX, spanY) || 1
  const pad = span * margin
  const scale = Math.min(width, height) / (span + 2 * pad)
  // y flips: world up is screen up
  return { scale, tx: -(x0 - pad) * scale, ty: (y1 + pad) * scale }
}

export function project(t: Transform, x: number, y: number): [number, number] {
  return [x * t.scale + t.tx, -y * t.scale + t.ty]
}

function partPath(t: Transform, part: [number, number][], close: boolean): string {
  const cmds = part.map(([x, y], i) => {
    const [px, py] = project(t, x, y)
    return `${i === 0 ? 'M' : 'L'}${px.toFixed(2)} ${py.toFixed(2)}`
  })
  return cmds.join(' ') + (close ? ' Z' : '')
}

export function buildDrawing(
  geoms: Geometry[],
  bbox: [number, number, number, number],
  width = 640,
  height = 640,
): Drawing {
  const t = fitTransform(bbox, width, height)
  const drawing: Drawing = { paths: [], dots: [], width, height }
  for (const g of geoms) {
    if (g.type === 'point') {
      const [cx, cy] = project(t, g.x, g.y)
      drawing.dots.push({ cx, cy })
    } else if (g.type === 'multipoint') {
      for (const [x, y] of g.points) {
        const [cx, cy] = project(t, x, y)
        drawing.dots.push({ cx, cy })
      }
    } else if (g.type === 'polyline') {
      drawing.paths.push({
        d: g.parts.map((p) => partPath(t, p, false)).join(' '),
        kind: 'polyline',
      })
    } else {
      drawing.paths.push({
        d: g.rings.map((r) => partPath(t, r, true)).join(' '),
        kind: 'polygon',
      })
    }
  }
  return drawing
}

export function drawingBounds(d: Drawing): [number, number, number, number] {
  let x0 = Infinity
  let y0 = Infinity
  let x1 = -Infinity
  let y1 = -Infinity
  const eat = (x: number, y: number) => {
    x0 = Math.min(x0, x)
    y0 = Math.min(y0, y)
    x1 = Math.max(x1, x)
    y1 = Math.max(y1, y)
  }
  for (const dot of d.dots) eat(dot.cx, dot.cy)
  for (const p of d.paths) {
    for (const m of p.d.matchAll(/([ML])(-?\d+(?:\.\d+)?) (-?\d+(?:\.\d+)?)/g)) {
      eat(Number(m[2]), Number(m[3]))
    }
  }
  return [x0, y0, x1, y1]
}
